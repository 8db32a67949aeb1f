# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Lattice walk analogue of the coverage problem."""

import logging
import math

from oslo_config import types

from sausagelab.analytic.bounds import remark1_bounds
from sausagelab.analytic.lattice import required_sites
from sausagelab.estimators.lattice import srw_cover
from sausagelab.experiments.base import (
    BaseExperiment,
    Param,
    TaskResult,
    float_list,
    int_list,
)
from sausagelab.experiments.bounds import BOUND_PARAMS, bound_params

logger = logging.getLogger(__name__)


class SrwExperiment(BaseExperiment):
    """Visits of marked sites by a simple random walk of n_sites^2 steps."""

    kind = "srw"
    PARAMS = {
        **BOUND_PARAMS,
        "n_sites": Param(int_list(min=2), [2, 3, 4]),
        "thetas": Param(float_list(min=0.0, max=1.0), [1.0]),
        "n_walks": Param(types.Integer(min=1), 1_000_000),
    }

    def check_params(self) -> None:
        p = self.params
        self.require(bool(p["n_sites"]), "n_sites", "at least one size is needed")
        self.require(
            all(0 < theta <= 1 for theta in p["thetas"]) and bool(p["thetas"]),
            "thetas",
            "theta must lie in (0, 1]",
        )

    def tasks(self):
        return [
            (f"n_sites={n},theta={theta!r}", (n, theta))
            for n in self.params["n_sites"]
            for theta in self.params["thetas"]
        ]

    def run_task(self, task):
        n_sites, theta = task
        estimate = srw_cover(
            n_sites, self.params["n_walks"], theta, self.seed, self.workers
        )
        exact = estimate.details.get("exact", math.nan)
        flag = "ok"
        if math.isfinite(exact) and abs(estimate.mean - exact) > 4.0 * estimate.stderr:
            flag = "mismatch"
            logger.warning(
                "Lattice estimate %.6g differs from exact %.6g for n_sites=%d",
                estimate.mean,
                exact,
                n_sites,
            )
        row = {
            "n_sites": n_sites,
            "theta": theta,
            "required_sites": required_sites(n_sites, theta),
            "n_steps": n_sites * n_sites,
            "p": estimate.mean,
            "stderr": estimate.stderr,
            "exact": exact,
        }
        if n_sites >= 3:
            curves = remark1_bounds(n_sites, theta, bound_params(self.params))
            row.update(curves._asdict())
        row["flag"] = flag
        return TaskResult(rows=[row], summary={"estimate": estimate.to_dict()})
