# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

import itertools

import numpy as np
import pytest

from sausagelab.analytic.lattice import (
    required_sites,
    srw_cover_exact,
    visited_marked_sites,
)
from sausagelab.exceptions import InvalidInputError

MOVES = [(1, 0), (-1, 0), (0, 1), (0, -1)]


def _brute_force(n_sites, need):
    hits = 0
    total = 0
    for walk in itertools.product(MOVES, repeat=n_sites * n_sites):
        x = y = 0
        seen = set()
        for dx, dy in walk:
            x, y = x + dx, y + dy
            if y == 0 and 1 <= x <= n_sites:
                seen.add(x)
        hits += len(seen) >= need
        total += 1
    return hits / total


def test_full_cover_two_sites():
    # 16 walks open with two right steps, 10 more reach (2, 0) at step 4.
    assert srw_cover_exact(2, 1.0) == pytest.approx(26 / 256)


@pytest.mark.parametrize("theta", [0.5, 1.0])
def test_matches_brute_force(theta):
    need = required_sites(2, theta)
    assert srw_cover_exact(2, theta) == pytest.approx(_brute_force(2, need))


def test_three_sites_is_a_probability():
    full = srw_cover_exact(3, 1.0)
    partial = srw_cover_exact(3, 0.5)
    assert 0.0 < full < partial < 1.0


def test_enumeration_limits():
    with pytest.raises(InvalidInputError):
        srw_cover_exact(4)
    with pytest.raises(InvalidInputError):
        srw_cover_exact(1)


def test_required_sites():
    assert required_sites(3, 1.0) == 3
    assert required_sites(3, 0.5) == 2
    assert required_sites(4, 0.5) == 2
    assert required_sites(4, 0.0) == 0
    with pytest.raises(InvalidInputError):
        required_sites(4, 1.5)


def test_visited_marked_sites_counts_distinct():
    positions = np.array(
        [
            [[0, 0], [1, 0], [0, 0], [1, 0]],
            [[0, 0], [0, 1], [1, 1], [2, 1]],
            [[0, 0], [1, 0], [2, 0], [3, 0]],
        ]
    )
    assert visited_marked_sites(positions, 2).tolist() == [1, 0, 2]
