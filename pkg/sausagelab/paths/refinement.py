# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Local bisection of polyline segments by bridge infill."""

import logging
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from sausagelab.paths.sample import bridge_infill

logger = logging.getLogger(__name__)

# qualifies(starts, ends, durations) -> boolean mask over segments
SegmentFilter = Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True, eq=False)
class RefinedPolyline:
    """A polyline whose segments may have different durations after refinement."""

    points: np.ndarray
    durations: np.ndarray
    refined_segments: int
    budget_limited: bool

    @property
    def final_dt(self) -> float:
        return float(self.durations.min()) if self.durations.size else 0.0


def adaptive_refine(
    points: np.ndarray,
    dt: float,
    rng: np.random.Generator,
    qualifies: SegmentFilter,
    dt_min: float,
    max_segments: int,
) -> RefinedPolyline:
    """
    Halve qualifying segments until none qualifies.

    A segment stops being split once its halves would be shorter than
    ``dt_min``; the polyline stops growing at ``max_segments``. Either limit
    leaving a qualifying segment unsplit marks the result budget-limited.
    """
    points = np.asarray(points, dtype=float)
    durations = np.full(max(points.shape[0] - 1, 0), float(dt))
    refined = 0
    budget_limited = False

    while durations.size:
        mask = np.asarray(qualifies(points[:-1], points[1:], durations), dtype=bool)
        if not mask.any():
            break
        splittable = mask & (durations / 2.0 >= dt_min)
        if not np.array_equal(splittable, mask):
            budget_limited = True
        if not splittable.any():
            break
        if durations.size + np.count_nonzero(splittable) > max_segments:
            budget_limited = True
            break

        index = np.flatnonzero(splittable)
        mids = bridge_infill(
            points[index], points[index + 1], durations[index], 2, rng
        )[:, 0, :]
        halved = durations.copy()
        halved[index] /= 2.0
        points = np.insert(points, index + 1, mids, axis=0)
        durations = np.insert(halved, index + 1, halved[index])
        refined += index.size

    if budget_limited:
        logger.debug("Refinement stopped by budget after %d splits", refined)
    return RefinedPolyline(points, durations, refined, budget_limited)
