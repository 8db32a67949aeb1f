# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Exact coverage probabilities for short lattice walks."""

import math

import numpy as np

from sausagelab.exceptions import InvalidInputError

MAX_ENUMERATION_SITES = 3

# Unit steps of the simple random walk on Z^2.
STEPS = np.array([[1, 0], [-1, 0], [0, 1], [0, -1]], dtype=np.int64)


def required_sites(n_sites: int, theta: float) -> int:
    """Number of marked sites a walk must visit to reach fraction theta."""
    if not 0 <= theta <= 1:
        raise InvalidInputError(f"theta must lie in [0, 1], got {theta}")
    return math.ceil(theta * n_sites - 1e-12)


def visited_marked_sites(positions: np.ndarray, n_sites: int) -> np.ndarray:
    """
    Count distinct marked sites (1,0)...(N,0) visited by each walk.

    Args:
        positions: Integer array (walks, steps + 1, 2)
        n_sites: N

    Returns:
        Visit counts per walk
    """
    on_axis = positions[..., 1] == 0
    xs = positions[..., 0]
    counts = np.zeros(positions.shape[0], dtype=np.int64)
    for site in range(1, n_sites + 1):
        counts += np.any(on_axis & (xs == site), axis=1)
    return counts


def srw_cover_exact(n_sites: int, theta: float = 1.0) -> float:
    """
    Exact probability that a walk of n_sites^2 steps visits enough marked sites.

    Enumerates all 4^(N^2) walks, so N is limited to 3.
    """
    if not 2 <= n_sites <= MAX_ENUMERATION_SITES:
        raise InvalidInputError(
            f"Enumeration supports 2 <= n_sites <= {MAX_ENUMERATION_SITES}"
        )
    need = required_sites(n_sites, theta)
    n_steps = n_sites * n_sites
    codes = np.arange(4**n_steps, dtype=np.int64)
    digits = (codes[:, None] // 4 ** np.arange(n_steps, dtype=np.int64)) % 4
    positions = np.zeros((codes.size, n_steps + 1, 2), dtype=np.int64)
    positions[:, 1:, :] = np.cumsum(STEPS[digits], axis=1)
    hits = visited_marked_sites(positions, n_sites) >= need
    return float(np.count_nonzero(hits)) / codes.size
