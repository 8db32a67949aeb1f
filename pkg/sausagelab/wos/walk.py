# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Walk on spheres for the strip with an epsilon-ball target."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from sausagelab.constants import (
    DEFAULT_MAX_STEPS,
    DEFAULT_X_CUTOFF,
    MIN_MAX_STEPS,
    MIN_X_CUTOFF,
    STOP_SHELL_FRACTION,
)
from sausagelab.exceptions import InvalidInputError
from sausagelab.stats import Estimate
from sausagelab.streams import StreamKey, as_generator, stream_record

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WosConfig:
    """
    Walk-on-spheres settings.

    The domain is the strip |y| < 1 cut at |x - alpha| < x_cutoff, minus the
    closed epsilon-ball around (alpha, 0). ``stop_shell`` defaults to one
    percent of epsilon.
    """

    epsilon: float
    stop_shell: float | None = None
    x_cutoff: float = DEFAULT_X_CUTOFF
    max_steps: int = DEFAULT_MAX_STEPS
    n_walks: int = 10_000

    def __post_init__(self):
        if not 0 < self.epsilon < 1:
            raise InvalidInputError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if self.stop_shell is None:
            object.__setattr__(self, "stop_shell", self.epsilon * STOP_SHELL_FRACTION)
        if not 0 < self.stop_shell < self.epsilon:
            raise InvalidInputError("stop_shell must lie in (0, epsilon)")
        if self.x_cutoff < MIN_X_CUTOFF:
            raise InvalidInputError(f"x_cutoff must be at least {MIN_X_CUTOFF}")
        if self.max_steps < MIN_MAX_STEPS:
            raise InvalidInputError(f"max_steps must be at least {MIN_MAX_STEPS}")
        if self.n_walks < 1:
            raise InvalidInputError("n_walks must be positive")


def wos_outcomes(
    start: tuple[float, float],
    alpha: float,
    cfg: WosConfig,
    rng: np.random.Generator,
) -> tuple[np.ndarray, int]:
    """
    Per-walk hit indicators and the number of walks cut by ``max_steps``.

    Works in coordinates centered on the ball, f((x, y), alpha) being
    f((x - alpha, y), 0).
    """
    x0, y0 = float(start[0]) - alpha, float(start[1])
    if abs(y0) > 1:
        raise InvalidInputError(f"Start must lie in the strip, got y={y0}")
    n = cfg.n_walks
    hits = np.zeros(n, dtype=bool)
    if math.hypot(x0, y0) <= cfg.epsilon:
        hits[:] = True
        return hits, 0
    if abs(y0) >= 1 or abs(x0) >= cfg.x_cutoff:
        return hits, 0

    px = np.full(n, x0)
    py = np.full(n, y0)
    live = np.arange(n)
    for _ in range(cfg.max_steps):
        to_ball = np.hypot(px, py) - cfg.epsilon
        to_strip = 1.0 - np.abs(py)
        absorbed = to_ball <= cfg.stop_shell
        escaped = ~absorbed & (
            (to_strip <= cfg.stop_shell) | (np.abs(px) >= cfg.x_cutoff)
        )
        hits[live[absorbed]] = True
        keep = ~(absorbed | escaped)
        if not keep.any():
            return hits, 0
        live, px, py = live[keep], px[keep], py[keep]
        radius = np.minimum(to_ball[keep], to_strip[keep])
        angle = rng.uniform(0.0, 2.0 * math.pi, size=live.size)
        px = px + radius * np.cos(angle)
        py = py + radius * np.sin(angle)
    return hits, int(live.size)


def wos_estimate(
    start: tuple[float, float],
    alpha: float,
    cfg: WosConfig,
    stream: StreamKey | np.random.Generator,
) -> Estimate:
    """Estimate of f(start, alpha); truncated walks score 0 and are tallied."""
    hits, truncated = wos_outcomes(start, alpha, cfg, as_generator(stream))
    if truncated:
        logger.warning(
            "%d of %d walks from %s hit the step budget", truncated, cfg.n_walks, start
        )
    p = float(np.count_nonzero(hits)) / hits.size
    return Estimate(
        mean=p,
        stderr=math.sqrt(p * (1.0 - p) / hits.size),
        n=hits.size,
        seed_record=stream_record(stream),
        details={"truncated": truncated},
    )
