# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Exact intersection of a polyline sausage with the unit segment."""

import numpy as np

from sausagelab.exceptions import InvalidInputError
from sausagelab.paths.sample import PathSample
from sausagelab.sausage.intervals import IntervalUnion


def _disk_chord(points: np.ndarray, epsilon: float) -> tuple[np.ndarray, np.ndarray]:
    half = np.sqrt(np.maximum(epsilon**2 - points[:, 1] ** 2, 0.0))
    hit = np.abs(points[:, 1]) <= epsilon
    return (
        np.where(hit, points[:, 0] - half, np.inf),
        np.where(hit, points[:, 0] + half, -np.inf),
    )


def _band(
    slope: np.ndarray, offset: np.ndarray, lo: float, hi: float
) -> tuple[np.ndarray, np.ndarray]:
    """x-range where slope*x + offset lies in [lo, hi]."""
    flat = slope == 0
    safe = np.where(flat, 1.0, slope)
    x1 = (lo - offset) / safe
    x2 = (hi - offset) / safe
    inside = (offset >= lo) & (offset <= hi)
    left = np.where(flat, np.where(inside, -np.inf, np.inf), np.minimum(x1, x2))
    right = np.where(flat, np.where(inside, np.inf, -np.inf), np.maximum(x1, x2))
    return left, right


def polyline_intervals(points: np.ndarray, epsilon: float) -> IntervalUnion:
    """
    The set of x in [0, 1] within ``epsilon`` of a planar polyline.

    The sausage of one segment is convex, so its trace on the axis is a
    single interval: the hull of the two endpoint-disk chords and the chord
    of the band of width 2*epsilon around the segment.
    """
    if epsilon <= 0:
        raise InvalidInputError(f"epsilon must be positive, got {epsilon}")
    points = np.asarray(points, dtype=float)
    if points.ndim != 2 or points.shape[1] != 2:
        raise InvalidInputError("Sausage geometry needs a planar path")
    if points.shape[0] == 1:
        left, right = _disk_chord(points, epsilon)
        return IntervalUnion.from_pairs(left, right)

    p0, p1 = points[:-1], points[1:]
    left0, right0 = _disk_chord(p0, epsilon)
    left1, right1 = _disk_chord(p1, epsilon)

    delta = p1 - p0
    length = np.hypot(delta[:, 0], delta[:, 1])
    moving = length > 0
    safe_len = np.where(moving, length, 1.0)
    ux, uy = delta[:, 0] / safe_len, delta[:, 1] / safe_len

    # s(x): position along the segment in [0, 1]; t(x): signed offset from it.
    s_left, s_right = _band(
        ux / safe_len, -(p0[:, 0] * ux + p0[:, 1] * uy) / safe_len, 0.0, 1.0
    )
    t_left, t_right = _band(-uy, p0[:, 0] * uy - p0[:, 1] * ux, -epsilon, epsilon)
    rect_left = np.maximum(s_left, t_left)
    rect_right = np.minimum(s_right, t_right)
    rect_ok = moving & (rect_left <= rect_right)
    rect_left = np.where(rect_ok, rect_left, np.inf)
    rect_right = np.where(rect_ok, rect_right, -np.inf)

    lefts = np.minimum(np.minimum(left0, left1), rect_left)
    rights = np.maximum(np.maximum(right0, right1), rect_right)
    return IntervalUnion.from_pairs(lefts, rights)


def cover_intervals(
    path: PathSample, epsilon: float, stop_index: int | None = None
) -> IntervalUnion:
    """Covered part of [0, 1] x {0} by the path run up to ``stop_index``."""
    if stop_index is not None and not 0 <= stop_index < len(path):
        raise InvalidInputError(f"stop_index {stop_index} outside path")
    end = len(path) if stop_index is None else stop_index + 1
    return polyline_intervals(path.points[:end], epsilon)


def xi_measure(u: IntervalUnion) -> float:
    return u.measure()


def covers_segment(u: IntervalUnion, slack: float = 0.0) -> bool:
    """True when ``u`` contains [slack, 1 - slack]."""
    if slack < 0:
        raise InvalidInputError(f"slack must be nonnegative, got {slack}")
    if slack > 0.5:
        return True
    return any(left <= slack and right >= 1.0 - slack for left, right in u)
