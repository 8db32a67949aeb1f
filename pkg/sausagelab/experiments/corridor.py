# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Corridor importance sampling sweep."""

import logging
import math

from oslo_config import types

from sausagelab.analytic.corridor import TUNING_COVER, TUNING_THETA, TUNINGS
from sausagelab.constants import DEFAULT_MAX_SEGMENTS
from sausagelab.estimators.corridor import is_lower_bound, one_step_weight_check
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

logger = logging.getLogger(__name__)

ONE_STEP_TASK = "one-step"


def _log_fields(prefix: str, estimate) -> dict:
    if estimate is None:
        return {f"log_{prefix}": -math.inf, f"log_{prefix}_stderr": math.nan}
    return {f"log_{prefix}": estimate.mean, f"log_{prefix}_stderr": estimate.stderr}


class CorridorExperiment(BaseExperiment):
    """Lower bounds from the ball corridor, swept over epsilon, theta and K_tune."""

    kind = "corridor"
    PARAMS = {
        "epsilons": Param(float_list(min=0.0, max=0.5), [0.15]),
        "thetas": Param(float_list(min=0.0, max=1.0), [0.3]),
        "k_tunes": Param(float_list(min=0.0), [1.0], "Corridor density multipliers"),
        "gamma": Param(types.Float(min=0.0), None, "Default depends on tuning"),
        "tuning": Param(types.String(choices=list(TUNINGS)), TUNING_THETA),
        "n": Param(types.Integer(min=1), 1000),
        "dt_fine": Param(types.Float(min=0.0), None, "Bridge step; default (eps/4)^2"),
        "refine_margin": Param(types.Float(min=0.0), 0.0),
        "max_segments": Param(types.Integer(min=1), DEFAULT_MAX_SEGMENTS),
        "check_one_step": Param(types.Boolean(), True),
        "one_step_balls": Param(types.Integer(min=1), 2),
        "one_step_n": Param(types.Integer(min=1), 100_000),
    }

    def check_params(self) -> None:
        p = self.params
        for name in ("epsilons", "thetas", "k_tunes"):
            self.require(bool(p[name]), name, "must not be empty")
        self.require(
            all(0 < eps < 0.5 for eps in p["epsilons"]),
            "epsilons",
            "epsilon must lie in (0, 1/2)",
        )
        self.require(all(k > 0 for k in p["k_tunes"]), "k_tunes", "must be positive")
        if p["gamma"] is None and p["tuning"] == TUNING_THETA:
            self.require(
                all(0 < theta < 1 for theta in p["thetas"]),
                "thetas",
                "the theta tuning needs theta in (0, 1) unless gamma is given",
            )
        self.require(p["gamma"] is None or p["gamma"] > 0, "gamma", "must be positive")
        self.require(
            p["dt_fine"] is None or p["dt_fine"] > 0, "dt_fine", "must be positive"
        )

    def tasks(self):
        p = self.params
        tasks = [
            (f"epsilon={eps!r},theta={theta!r},k={k!r}", (eps, theta, k))
            for eps in p["epsilons"]
            for theta in p["thetas"]
            for k in p["k_tunes"]
        ]
        if p["check_one_step"]:
            tasks.append((ONE_STEP_TASK, None))
        return tasks

    def run_task(self, task):
        if task is None:
            return self._one_step()
        p = self.params
        epsilon, theta, k_tune = task
        params = SausageParams(
            epsilon=epsilon,
            theta=theta,
            refine_margin=p["refine_margin"],
            max_segments=p["max_segments"],
        )
        result = is_lower_bound(
            params,
            gamma=p["gamma"],
            k_tune=k_tune,
            n=p["n"],
            dt_fine=p["dt_fine"],
            seed=self.seed,
            workers=self.workers,
            tuning=p["tuning"],
        )
        cover_tuned = result.tuning == TUNING_COVER
        target_estimate = result.cover_log if cover_tuned else result.theta_log
        row = {
            "epsilon": epsilon,
            "theta": theta,
            "k_tune": k_tune,
            "tuning": result.tuning,
            "N": result.n_balls_param,
            "gamma": result.gamma,
            "n": result.n,
            **_log_fields("theta", result.theta_log),
            "theta_lower": result.theta_linear.mean,
            "theta_lower_stderr": result.theta_linear.stderr,
            **_log_fields("cover", result.cover_log),
            "log_p_corridor": result.log_p_corridor.mean,
            "conditional_theta_fraction": result.conditional_theta_fraction.mean,
            "conditional_cover_fraction": result.conditional_cover_fraction.mean,
            "discrete_theta_fraction": result.discrete_theta_fraction.mean,
            "discrete_cover_fraction": result.discrete_cover_fraction.mean,
            "conditional_miss_rate": result.conditional_miss_rate,
            "mean_xi": result.mean_xi,
            "theta_upper_log": result.theta_upper_log,
            "cover_upper_log": result.cover_upper_log,
            "budget_limited": result.budget_limited,
            "flag": "no_successes" if target_estimate is None else "ok",
        }
        variant = f"k={k_tune!r},tuning={result.tuning}"
        if cover_tuned:
            point = log_point(
                TARGET_COVER, epsilon, 1.0, result.cover_log, variant, log_domain=True
            )
        else:
            point = log_point(
                TARGET_THETA, epsilon, theta, result.theta_log, variant, log_domain=True
            )
        return TaskResult(
            rows=[row],
            summary=result.summary(),
            points=[point],
            inconclusive=target_estimate is None,
        )

    def _one_step(self) -> TaskResult:
        report = one_step_weight_check(
            self.params["one_step_balls"], self.params["one_step_n"], self.seed
        )
        if not report.agrees:
            logger.warning(
                "One-step weight check disagrees: weighted %s vs direct %s",
                report.weighted.mean,
                report.direct.mean,
            )
        summary = {
            "weighted": report.weighted.to_dict(),
            "direct": report.direct.to_dict(),
            "agrees": report.agrees,
        }
        return TaskResult(rows=report.rows(), summary=summary)
