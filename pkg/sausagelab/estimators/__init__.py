# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Stochastic experiments on sausage coverage."""

from sausagelab.estimators.bridge import BridgeReport, bridge_hit_experiment
from sausagelab.estimators.corridor import (
    CorridorRun,
    LowerBoundResult,
    OneStepReport,
    corridor_sample,
    is_lower_bound,
    one_step_weight_check,
)
from sausagelab.estimators.coverage import (
    NaiveResult,
    StripReport,
    naive_mc,
    strip_conditioning_check,
)
from sausagelab.estimators.lattice import srw_cover
from sausagelab.estimators.local_time import (
    LocalTimeProfile,
    TailReport,
    build_profile,
    local_time_tail,
)
from sausagelab.estimators.martingale import (
    MartingaleReport,
    MartingaleTrack,
    martingale_study,
    martingale_track,
)
from sausagelab.stats import Estimate

__all__ = [
    "BridgeReport",
    "CorridorRun",
    "Estimate",
    "LocalTimeProfile",
    "LowerBoundResult",
    "MartingaleReport",
    "MartingaleTrack",
    "NaiveResult",
    "OneStepReport",
    "StripReport",
    "TailReport",
    "bridge_hit_experiment",
    "build_profile",
    "corridor_sample",
    "is_lower_bound",
    "local_time_tail",
    "martingale_study",
    "martingale_track",
    "naive_mc",
    "one_step_weight_check",
    "srw_cover",
    "strip_conditioning_check",
]
