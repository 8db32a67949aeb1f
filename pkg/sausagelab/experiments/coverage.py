# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Plain Monte Carlo coverage experiments."""

import logging

from oslo_config import types

from sausagelab.constants import DEFAULT_MAX_SEGMENTS
from sausagelab.estimators.coverage import naive_mc, strip_conditioning_check
from sausagelab.experiments.base import (
    TARGET_COVER,
    TARGET_THETA,
    BaseExperiment,
    Param,
    TaskResult,
    float_list,
    log_point,
)
from sausagelab.sausage.adaptive import SausageParams
from sausagelab.stats import proportion

logger = logging.getLogger(__name__)

SAUSAGE_PARAMS = {
    "epsilons": Param(float_list(min=0.0), [0.1], "Sausage radii"),
    "thetas": Param(float_list(min=0.0, max=1.0), [0.5], "Coverage thresholds"),
    "dt": Param(types.Float(min=0.0), None, "Time step; default (eps/4)^2"),
    "refine_margin": Param(types.Float(min=0.0), 0.0, "Adaptive refinement band"),
    "max_segments": Param(types.Integer(min=1), DEFAULT_MAX_SEGMENTS),
}


class _SausageExperiment(BaseExperiment):
    def check_params(self) -> None:
        p = self.params
        self.require(bool(p["epsilons"]), "epsilons", "at least one epsilon is needed")
        self.require(bool(p["thetas"]), "thetas", "at least one theta is needed")
        self.require(
            all(eps > 0 for eps in p["epsilons"]),
            "epsilons",
            "epsilon must be positive",
        )
        self.require(p["dt"] is None or p["dt"] > 0, "dt", "dt must be positive")

    def sausage(self, epsilon: float, theta: float) -> SausageParams:
        return SausageParams(
            epsilon=epsilon,
            theta=theta,
            refine_margin=self.params["refine_margin"],
            max_segments=self.params["max_segments"],
        )


class NaiveExperiment(_SausageExperiment):
    """Direct sampling of the covered fraction, one task per epsilon."""

    kind = "naive"
    PARAMS = {**SAUSAGE_PARAMS, "n": Param(types.Integer(min=1), 10_000)}

    def tasks(self):
        return [(f"epsilon={eps!r}", eps) for eps in self.params["epsilons"]]

    def run_task(self, epsilon):
        thetas = self.params["thetas"]
        result = naive_mc(
            self.sausage(epsilon, thetas[0]),
            self.params["n"],
            dt=self.params["dt"],
            seed=self.seed,
            workers=self.workers,
        )
        if result.budget_limited:
            logger.warning(
                "%d paths hit the refinement budget at epsilon=%s",
                result.budget_limited,
                epsilon,
            )
        record = result.p_theta.seed_record
        rows, points = [], []
        for theta in thetas:
            p_theta = proportion(result.xi >= theta, record)
            rows.append(
                {
                    "epsilon": epsilon,
                    "theta": theta,
                    "n": result.p_cover.n,
                    "dt": result.dt,
                    "p_cover": result.p_cover.mean,
                    "p_cover_stderr": result.p_cover.stderr,
                    "p_theta": p_theta.mean,
                    "p_theta_stderr": p_theta.stderr,
                    "xi_mean": result.xi_summary["mean"],
                    "budget_limited": result.budget_limited,
                    "flag": "ok" if p_theta.mean > 0 else "no_successes",
                }
            )
            if theta >= 1.0:
                points.append(log_point(TARGET_COVER, epsilon, 1.0, result.p_cover))
            else:
                points.append(log_point(TARGET_THETA, epsilon, theta, p_theta))
        summary = {
            "p_cover": result.p_cover.to_dict(),
            "xi": result.xi_summary,
            "dt": result.dt,
            "budget_limited": result.budget_limited,
        }
        return TaskResult(rows=rows, summary=summary, points=points)


class StripConditioningExperiment(_SausageExperiment):
    """Effect of conditioning on staying inside the strip, per (epsilon, theta)."""

    kind = "strip-cond"
    PARAMS = {**SAUSAGE_PARAMS, "n": Param(types.Integer(min=1), 100_000)}

    def tasks(self):
        return [
            (f"epsilon={eps!r},theta={theta!r}", (eps, theta))
            for eps in self.params["epsilons"]
            for theta in self.params["thetas"]
        ]

    def run_task(self, task):
        epsilon, theta = task
        report = strip_conditioning_check(
            self.sausage(epsilon, theta),
            self.params["n"],
            dt=self.params["dt"],
            seed=self.seed,
            workers=self.workers,
        )
        rows = [{"epsilon": epsilon, "theta": theta, **row} for row in report.rows()]
        if not report.inconclusive and not report.holds:
            logger.warning(
                "Conditioning lowered P[Xi >= %s] at epsilon=%s by more than 3 sigma",
                theta,
                epsilon,
            )
        summary = {
            "p_g2": report.p_g2.to_dict(),
            "difference": report.difference,
            "difference_stderr": report.difference_stderr,
            "n_g1": report.n_g1,
            "holds": report.holds,
            "inconclusive": report.inconclusive,
        }
        return TaskResult(rows=rows, summary=summary, inconclusive=report.inconclusive)
