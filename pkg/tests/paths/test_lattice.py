# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

import numpy as np
import pytest

from sausagelab.exceptions import InvalidInputError
from sausagelab.paths import sample_srw, sample_srw_batch
from sausagelab.streams import StreamKey


def test_steps_are_unit_moves():
    walks = sample_srw_batch(50, 20, np.random.default_rng(4))
    assert walks.shape == (50, 21, 2)
    assert (walks[:, 0] == 0).all()
    step_length = np.abs(np.diff(walks, axis=1)).sum(axis=2)
    assert (step_length == 1).all()


def test_zero_steps():
    walks = sample_srw_batch(3, 0, np.random.default_rng(4))
    assert walks.shape == (3, 1, 2)


def test_single_walk_record():
    walk = sample_srw(3, 9, StreamKey(8, (1,)))
    assert walk.n_steps == 9
    assert walk.seed_record == "8/1"
    assert 0 <= walk.visited_sites() <= 3


def test_rejects_bad_sizes():
    with pytest.raises(InvalidInputError):
        sample_srw(0, 4, StreamKey(1))
