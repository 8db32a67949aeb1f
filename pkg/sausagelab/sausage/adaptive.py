# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Coverage with bridge refinement near the sausage boundary."""

import math
from dataclasses import dataclass

import numpy as np

from sausagelab.constants import DEFAULT_DT_MIN, DEFAULT_MAX_SEGMENTS
from sausagelab.exceptions import InvalidInputError
from sausagelab.paths.refinement import adaptive_refine
from sausagelab.paths.sample import PathSample
from sausagelab.sausage.geometry import cover_intervals, polyline_intervals
from sausagelab.sausage.intervals import IntervalUnion
from sausagelab.streams import StreamKey, as_generator


@dataclass(frozen=True)
class SausageParams:
    """Sausage radius, coverage threshold and refinement controls."""

    epsilon: float
    theta: float
    refine_margin: float = 0.0
    dt_min: float = DEFAULT_DT_MIN
    max_segments: int = DEFAULT_MAX_SEGMENTS

    def __post_init__(self):
        if not (math.isfinite(self.epsilon) and self.epsilon > 0):
            raise InvalidInputError(f"epsilon must be positive, got {self.epsilon}")
        # theta = 0 is accepted as the degenerate "any coverage" threshold.
        if not 0 <= self.theta <= 1:
            raise InvalidInputError(f"theta must lie in [0, 1], got {self.theta}")
        if self.refine_margin < 0:
            raise InvalidInputError("refine_margin must be nonnegative")
        if self.dt_min <= 0 or self.max_segments < 1:
            raise InvalidInputError("dt_min and max_segments must be positive")


@dataclass(frozen=True)
class AdaptiveCover:
    union: IntervalUnion
    budget_limited: bool = False
    refined_segments: int = 0
    final_dt: float = 0.0


def point_segment_distance(q: np.ndarray, p0: np.ndarray, p1: np.ndarray) -> np.ndarray:
    """Distance from point ``q`` to each segment p0[k]p1[k]."""
    delta = p1 - p0
    norm2 = np.einsum("ij,ij->i", delta, delta)
    safe = np.where(norm2 > 0, norm2, 1.0)
    s = np.clip(np.einsum("ij,ij->i", q - p0, delta) / safe, 0.0, 1.0)
    s = np.where(norm2 > 0, s, 0.0)
    closest = p0 + s[:, None] * delta
    return np.hypot(*(q - closest).T)


def segment_target_distance(p0: np.ndarray, p1: np.ndarray) -> np.ndarray:
    """Minimum distance between each segment p0[k]p1[k] and [0, 1] x {0}."""
    p0 = np.atleast_2d(np.asarray(p0, dtype=float))
    p1 = np.atleast_2d(np.asarray(p1, dtype=float))

    def to_target(p: np.ndarray) -> np.ndarray:
        dx = np.maximum.reduce([np.zeros(len(p)), -p[:, 0], p[:, 0] - 1.0])
        return np.hypot(dx, p[:, 1])

    dist = np.minimum.reduce(
        [
            to_target(p0),
            to_target(p1),
            point_segment_distance(np.array([0.0, 0.0]), p0, p1),
            point_segment_distance(np.array([1.0, 0.0]), p0, p1),
        ]
    )
    dy = p0[:, 1] - p1[:, 1]
    crosses = (p0[:, 1] * p1[:, 1] < 0) & (dy != 0)
    safe_dy = np.where(dy != 0, dy, 1.0)
    x_cross = p0[:, 0] + (p1[:, 0] - p0[:, 0]) * p0[:, 1] / safe_dy
    crosses &= (x_cross >= 0.0) & (x_cross <= 1.0)
    return np.where(crosses, 0.0, dist)


def boundary_margin(durations: np.ndarray, refine_margin: float) -> np.ndarray:
    """refine_margin * sqrt(dt |log dt|) per segment."""
    return refine_margin * np.sqrt(durations * np.abs(np.log(durations)))


def adaptive_cover(
    path: PathSample,
    params: SausageParams,
    stream: StreamKey | np.random.Generator,
) -> AdaptiveCover:
    """
    Covered intervals after refining segments near the sausage boundary.

    A segment is refined while its distance to the target lies within the
    margin of epsilon. A zero margin returns the plain polyline cover.
    """
    if params.refine_margin == 0 or len(path) < 2:
        return AdaptiveCover(
            union=cover_intervals(path, params.epsilon), final_dt=path.dt
        )

    def qualifies(starts, ends, durations):
        margin = boundary_margin(durations, params.refine_margin)
        distance = segment_target_distance(starts, ends)
        return np.abs(distance - params.epsilon) < margin

    refined = adaptive_refine(
        path.points,
        path.dt,
        as_generator(stream),
        qualifies,
        params.dt_min,
        params.max_segments,
    )
    return AdaptiveCover(
        union=polyline_intervals(refined.points, params.epsilon),
        budget_limited=refined.budget_limited,
        refined_segments=refined.refined_segments,
        final_dt=refined.final_dt,
    )


def polyline_point_distance(points: np.ndarray, q: np.ndarray) -> float:
    """Distance from point ``q`` to a polyline given by its vertices."""
    points = np.asarray(points, dtype=float)
    q = np.asarray(q, dtype=float)
    if points.shape[0] == 1:
        return float(np.hypot(*(points[0] - q)))
    return float(point_segment_distance(q, points[:-1], points[1:]).min())
