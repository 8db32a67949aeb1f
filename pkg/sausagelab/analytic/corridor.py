# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""The back-and-forth ball sequence used by the corridor sampler."""

import math
from dataclasses import dataclass

import numpy as np

from sausagelab.exceptions import InvalidInputError

TUNING_THETA = "theta"
TUNING_COVER = "cover"
TUNINGS = (TUNING_THETA, TUNING_COVER)


@dataclass(frozen=True)
class CorridorSpec:
    """N^2 balls of radius 1/N whose centers sweep [0, 1] back and forth."""

    n_balls_param: int
    centers: tuple[float, ...]
    radius: float
    checkpoint_dt: float

    def __post_init__(self):
        n = self.n_balls_param
        if n < 1:
            raise InvalidInputError(f"N must be at least 1, got {n}")
        if len(self.centers) != n * n:
            raise InvalidInputError(
                f"Expected {n * n} centers, got {len(self.centers)}"
            )
        steps = np.abs(np.diff(np.asarray(self.centers, dtype=float)))
        if steps.size and not np.allclose(steps, 1.0 / n, rtol=0, atol=1e-12):
            raise InvalidInputError("Consecutive centers must be 1/N apart")
        if not math.isclose(self.centers[0], 1.0 / n, abs_tol=1e-12):
            raise InvalidInputError("First center must be 1/N")
        if not math.isclose(self.radius * n, 1.0):
            raise InvalidInputError("Ball radius must be 1/N")
        if not math.isclose(self.checkpoint_dt * n * n, 1.0):
            raise InvalidInputError("Checkpoint spacing must be 1/N^2")

    @property
    def n_checkpoints(self) -> int:
        return self.n_balls_param**2

    def center_points(self) -> np.ndarray:
        """Ball centers as an (N^2, 2) array on the x-axis."""
        points = np.zeros((self.n_checkpoints, 2))
        points[:, 0] = self.centers
        return points


def corridor_centers(n: int) -> CorridorSpec:
    """
    Build the ball sequence for parameter N.

    Abscissas follow the triangle wave 1/N, 2/N, ..., 1, (N-1)/N, ..., 0,
    1/N, ... for N^2 steps.
    """
    if n < 1:
        raise InvalidInputError(f"N must be at least 1, got {n}")
    j = np.arange(1, n * n + 1)
    phase = j % (2 * n)
    abscissa = np.where(phase <= n, phase, 2 * n - phase) / n
    return CorridorSpec(
        n_balls_param=n,
        centers=tuple(float(x) for x in abscissa),
        radius=1.0 / n,
        checkpoint_dt=1.0 / (n * n),
    )


def corridor_n(
    epsilon: float, gamma: float, k_tune: float, tuning: str = TUNING_THETA
) -> int:
    """
    Number of balls per unit length for the corridor event.

    The ``theta`` tuning uses N = ceil(gamma K |log(eps/2)|), sized for a
    covered fraction; ``cover`` multiplies by |log eps| as needed for full
    coverage.
    """
    if not 0 < epsilon < 0.5:
        raise InvalidInputError(f"epsilon must lie in (0, 1/2), got {epsilon}")
    if gamma <= 0 or k_tune <= 0:
        raise InvalidInputError("gamma and K_tune must be positive")
    if tuning not in TUNINGS:
        raise InvalidInputError(f"Unknown corridor tuning: {tuning}")
    scale = gamma * k_tune * abs(math.log(epsilon / 2.0))
    if tuning == TUNING_COVER:
        scale *= abs(math.log(epsilon))
    return max(1, math.ceil(scale))


def default_gamma(theta: float) -> float:
    """gamma with e^-gamma = (1 - theta)/3."""
    if not 0 < theta < 1:
        raise InvalidInputError(f"theta must lie in (0, 1), got {theta}")
    return abs(math.log((1.0 - theta) / 3.0))
