# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Simple random walk on the square lattice."""

from dataclasses import dataclass

import numpy as np

from sausagelab.analytic.lattice import STEPS, visited_marked_sites
from sausagelab.exceptions import InvalidInputError
from sausagelab.streams import StreamKey, as_generator, stream_record


@dataclass(frozen=True, eq=False)
class LatticePath:
    """Positions of a walk from the origin; ``positions`` has shape (steps + 1, 2)."""

    n_sites: int
    positions: np.ndarray
    seed_record: str = ""

    @property
    def n_steps(self) -> int:
        return self.positions.shape[0] - 1

    def visited_sites(self) -> int:
        """Distinct marked sites (1,0)...(n_sites,0) visited."""
        return int(visited_marked_sites(self.positions[None], self.n_sites)[0])


def sample_srw_batch(
    n_walks: int, n_steps: int, rng: np.random.Generator
) -> np.ndarray:
    """Positions of ``n_walks`` independent walks, shape (walks, steps + 1, 2)."""
    positions = np.zeros((n_walks, n_steps + 1, 2), dtype=np.int64)
    if n_steps:
        moves = STEPS[rng.integers(0, 4, size=(n_walks, n_steps))]
        positions[:, 1:, :] = np.cumsum(moves, axis=1)
    return positions


def sample_srw(
    n_sites: int, n_steps: int, stream: StreamKey | np.random.Generator
) -> LatticePath:
    if n_sites < 1 or n_steps < 0:
        raise InvalidInputError("n_sites must be positive and n_steps nonnegative")
    positions = sample_srw_batch(1, n_steps, as_generator(stream))[0]
    return LatticePath(n_sites, positions, stream_record(stream))
