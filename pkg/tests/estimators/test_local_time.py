# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

import numpy as np
import pytest

from sausagelab.estimators.local_time import build_profile, local_time_tail
from sausagelab.exceptions import InvalidInputError
from sausagelab.paths import PathSample, sample_path
from sausagelab.streams import StreamKey


def test_profile_of_small_path():
    path = PathSample(0.5, np.array([0.0, 0.04, 0.26]))
    profile = build_profile(path, 0.1)
    assert profile.bin_centers.tolist() == pytest.approx([0.0])
    assert profile.density.tolist() == pytest.approx([10.0])
    assert profile.sup_stat == pytest.approx(10.0)
    assert profile.conservation_error == pytest.approx(0.0)


def test_profile_conserves_time():
    path = sample_path(1e-3, 1.0, StreamKey(1), dim=1)
    profile = build_profile(path, 0.05)
    total = profile.density.sum() * profile.bin_width
    assert total == pytest.approx(1.0)


def test_profile_rejects_bad_width():
    path = sample_path(1e-2, 1.0, StreamKey(1), dim=1)
    with pytest.raises(InvalidInputError):
        build_profile(path, 0.0)


def test_tail_fit():
    report = local_time_tail(400, 1e-3, 0.05, seed=3)
    survivals = [p["survival"] for p in report.points]
    assert survivals == sorted(survivals, reverse=True)
    assert all(p["exceedances"] >= 20 for p in report.points)
    assert report.slope < 0
    assert report.c8 == pytest.approx(-1 / (2 * report.slope))
    assert report.max_conservation_error < 1e-9
    assert report.summary()["n_paths"] == 400


def test_tail_rejects_fine_bins():
    with pytest.raises(InvalidInputError):
        local_time_tail(10, 1e-2, 0.05, seed=1)
