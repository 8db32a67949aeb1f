# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Coverage of marked sites by a simple random walk."""

from dataclasses import replace

import numpy as np

from sausagelab.analytic.lattice import (
    MAX_ENUMERATION_SITES,
    required_sites,
    srw_cover_exact,
    visited_marked_sites,
)
from sausagelab.constants import CHUNK_SIZE, STREAM_SRW
from sausagelab.exceptions import InvalidInputError
from sausagelab.paths.lattice import sample_srw_batch
from sausagelab.pool import map_ordered
from sausagelab.stats import Estimate, proportion
from sausagelab.streams import StreamKey


def srw_cover(
    n_sites: int, n_walks: int, theta: float, seed: int, workers: int = 1
) -> Estimate:
    """
    Probability that a walk of n_sites^2 steps visits at least
    ceil(theta * n_sites) of the sites (1,0)...(n_sites,0).

    Walks are drawn in fixed-size blocks, block k from
    StreamKey(seed, (STREAM_SRW, k)). For n_sites <= 3 the exact value is
    attached as ``details["exact"]``.
    """
    if n_sites < 2:
        raise InvalidInputError(f"n_sites must be at least 2, got {n_sites}")
    if n_walks < 1:
        raise InvalidInputError(f"n_walks must be positive, got {n_walks}")
    need = required_sites(n_sites, theta)
    n_steps = n_sites * n_sites
    block = CHUNK_SIZE * 16

    def run(k: int) -> np.ndarray:
        size = min(block, n_walks - k * block)
        rng = StreamKey(seed, (STREAM_SRW, k)).generator()
        positions = sample_srw_batch(size, n_steps, rng)
        return visited_marked_sites(positions, n_sites) >= need

    blocks = range((n_walks + block - 1) // block)
    hits = np.concatenate(map_ordered(run, blocks, workers))
    estimate = proportion(hits, str(StreamKey(seed, (STREAM_SRW,))))
    if n_sites <= MAX_ENUMERATION_SITES:
        estimate = replace(estimate, details={"exact": srw_cover_exact(n_sites, theta)})
    return estimate
