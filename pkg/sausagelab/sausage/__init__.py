# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Geometry of the epsilon-sausage of a polyline on the unit segment."""

from sausagelab.sausage.adaptive import (
    AdaptiveCover,
    SausageParams,
    adaptive_cover,
    point_segment_distance,
    polyline_point_distance,
    segment_target_distance,
)
from sausagelab.sausage.geometry import (
    cover_intervals,
    covers_segment,
    polyline_intervals,
    xi_measure,
)
from sausagelab.sausage.intervals import IntervalUnion

__all__ = [
    "AdaptiveCover",
    "IntervalUnion",
    "SausageParams",
    "adaptive_cover",
    "cover_intervals",
    "covers_segment",
    "point_segment_distance",
    "polyline_intervals",
    "polyline_point_distance",
    "segment_target_distance",
    "xi_measure",
]
