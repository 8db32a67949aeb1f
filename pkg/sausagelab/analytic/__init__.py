# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Closed-form probabilities and bound curves."""

from sausagelab.analytic.bounds import (
    BoundParams,
    BoundValues,
    azuma_tail_bound,
    local_time_tail_bound,
    qv_budget,
    remark1_bounds,
    theorem1_bounds,
    theorem1_log_bounds,
)
from sausagelab.analytic.corridor import CorridorSpec, corridor_centers, corridor_n
from sausagelab.analytic.lattice import srw_cover_exact
from sausagelab.analytic.probabilities import (
    annulus_hit_prob,
    exit_below_prob,
    gaussian_disk_prob,
)

__all__ = [
    "BoundParams",
    "BoundValues",
    "CorridorSpec",
    "annulus_hit_prob",
    "azuma_tail_bound",
    "corridor_centers",
    "corridor_n",
    "exit_below_prob",
    "gaussian_disk_prob",
    "local_time_tail_bound",
    "qv_budget",
    "remark1_bounds",
    "srw_cover_exact",
    "theorem1_bounds",
    "theorem1_log_bounds",
]
