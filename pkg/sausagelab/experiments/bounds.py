# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Tabulation of the coverage bound curves."""

import logging
import math

from oslo_config import types

from sausagelab.analytic.bounds import BoundParams, theorem1_log_bounds
from sausagelab.constants import DEFAULT_BOUND_CONSTANT
from sausagelab.experiments.base import BaseExperiment, Param, TaskResult, float_list

logger = logging.getLogger(__name__)

BOUND_PARAMS = {
    name: Param(types.Float(min=0.0), DEFAULT_BOUND_CONSTANT)
    for name in ("c1", "c2", "c3", "c4")
}


def bound_params(params: dict) -> BoundParams:
    return BoundParams(**{name: params[name] for name in BOUND_PARAMS})


class BoundsReportExperiment(BaseExperiment):
    """The four coverage curves on an (epsilon, theta) grid."""

    kind = "bounds-report"
    PARAMS = {
        **BOUND_PARAMS,
        "epsilons": Param(float_list(min=0.0), [0.1, 0.05, 0.02]),
        "thetas": Param(float_list(min=0.0, max=1.0), [0.5]),
    }

    def check_params(self) -> None:
        p = self.params
        self.require(
            bool(p["epsilons"]) and all(0 < e < math.exp(-1) for e in p["epsilons"]),
            "epsilons",
            "every epsilon must lie in (0, 1/e)",
        )
        self.require(
            bool(p["thetas"]) and all(0 < t <= 1 for t in p["thetas"]),
            "thetas",
            "every theta must lie in (0, 1]",
        )
        for name in BOUND_PARAMS:
            self.require(p[name] > 0, name, "must be positive")

    def tasks(self):
        return [("curves", None)]

    def run_task(self, task):
        params = bound_params(self.params)
        rows = []
        unordered = 0
        for epsilon in self.params["epsilons"]:
            for theta in self.params["thetas"]:
                logs = theorem1_log_bounds(epsilon, theta, params)
                row = {"epsilon": epsilon, "theta": theta}
                row.update({name: math.exp(v) for name, v in logs._asdict().items()})
                row.update({f"log_{name}": v for name, v in logs._asdict().items()})
                row["flag"] = "ok" if logs.ordered else "unordered"
                unordered += not logs.ordered
                rows.append(row)
        if unordered:
            logger.warning(
                "%d grid points have a lower curve above its upper curve for %s",
                unordered,
                params,
            )
        return TaskResult(rows=rows, summary={"unordered_points": unordered})
