# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Experiments on local time, bridges and the coverage martingale."""

import logging
import math

from oslo_config import types

from sausagelab.analytic.bounds import local_time_tail_bound
from sausagelab.constants import (
    DEFAULT_MAX_STEPS,
    DEFAULT_X_CUTOFF,
    MIN_MAX_STEPS,
    MIN_X_CUTOFF,
)
from sausagelab.estimators.bridge import (
    DEFAULT_Q1,
    DEFAULT_Q2,
    DEFAULT_Q3,
    bridge_hit_experiment,
)
from sausagelab.estimators.coverage import default_dt
from sausagelab.estimators.local_time import local_time_tail
from sausagelab.estimators.martingale import DEFAULT_CHECKPOINTS, martingale_study
from sausagelab.experiments.base import BaseExperiment, Param, TaskResult, float_list
from sausagelab.wos.walk import WosConfig

logger = logging.getLogger(__name__)


class LocalTimeExperiment(BaseExperiment):
    """Tail of the supremum of local time at time one."""

    kind = "local-time"
    PARAMS = {
        "n_paths": Param(types.Integer(min=1), 100_000),
        "dt": Param(types.Float(min=0.0, max=1.0), 1e-4),
        "bin_width": Param(types.Float(min=0.0), None, "Default sqrt(dt)"),
    }

    def check_params(self) -> None:
        p = self.params
        self.require(p["dt"] > 0, "dt", "must be positive")
        if p["bin_width"] is not None:
            self.require(
                p["bin_width"] >= math.sqrt(p["dt"]), "bin_width", "must be >= sqrt(dt)"
            )

    def tasks(self):
        return [("tail", None)]

    def run_task(self, task):
        p = self.params
        bin_width = p["bin_width"] or math.sqrt(p["dt"])
        report = local_time_tail(
            p["n_paths"], p["dt"], bin_width, self.seed, self.workers
        )
        rows = []
        for point in report.rows():
            bound = math.nan
            if math.isfinite(report.c8) and report.c8 > 0:
                bound = local_time_tail_bound(point["u"], report.c8)
            rows.append({**point, "fitted_bound": bound})
        summary = {**report.summary(), "bin_width": bin_width, "dt": p["dt"]}
        return TaskResult(rows=rows, summary=summary, inconclusive=report.inconclusive)


class BridgeExperiment(BaseExperiment):
    """Hitting probability of a small ball by a Brownian bridge."""

    kind = "bridge"
    PARAMS = {
        "deltas": Param(float_list(min=0.0, max=0.5), [0.1, 0.03, 0.01]),
        "n": Param(types.Integer(min=1), 100_000),
        "dt": Param(types.Float(min=0.0), None, "Default (min delta / 4)^2"),
        "q1": Param(float_list(), list(DEFAULT_Q1)),
        "q2": Param(float_list(), list(DEFAULT_Q2)),
        "q3": Param(float_list(), list(DEFAULT_Q3)),
        "refine_margin": Param(types.Float(min=0.0), 1.0),
    }

    def check_params(self) -> None:
        p = self.params
        self.require(bool(p["deltas"]), "deltas", "at least one delta is needed")
        self.require(
            all(0 < d < 0.5 for d in p["deltas"]), "deltas", "must lie in (0, 1/2)"
        )
        for name in ("q1", "q2", "q3"):
            self.require(len(p[name]) == 2, name, "must be a point [x, y]")
        dt = p["dt"] if p["dt"] is not None else (min(p["deltas"]) / 4.0) ** 2
        self.require(dt > 0, "dt", "must be positive")
        self.require(
            min(p["deltas"]) >= 4.0 * math.sqrt(dt) * (1 - 1e-12),
            "dt",
            "every delta must be at least 4 sqrt(dt)",
        )
        for a, b in (("q1", "q2"), ("q1", "q3"), ("q2", "q3")):
            self.require(
                math.dist(p[a], p[b]) <= 3.0, b, f"{a} and {b} are more than 3 apart"
            )

    def tasks(self):
        return [("hits", None)]

    def run_task(self, task):
        p = self.params
        report = bridge_hit_experiment(
            p["deltas"],
            p["n"],
            self.seed,
            q1=tuple(p["q1"]),
            q2=tuple(p["q2"]),
            q3=tuple(p["q3"]),
            dt=p["dt"],
            refine_margin=p["refine_margin"],
            workers=self.workers,
        )
        if not report.monotone:
            logger.warning("Bridge hit probability is not monotone in delta")
        summary = {
            "implied_inverse_k": report.implied_inverse_k,
            "monotone": report.monotone,
            "estimates": [e.to_dict() for e in report.estimates],
        }
        return TaskResult(rows=report.rows(), summary=summary)


class MartingaleExperiment(BaseExperiment):
    """Conditional coverage martingale along sampled paths."""

    kind = "martingale"
    PARAMS = {
        "epsilon": Param(types.Float(min=0.0, max=1.0), 0.05),
        "theta": Param(types.Float(min=0.0, max=1.0), 0.5),
        "n_paths": Param(types.Integer(min=1), 200),
        "dt": Param(types.Float(min=0.0), None, "Default (epsilon/4)^2"),
        "alpha_step": Param(types.Float(min=0.0), None, "Default epsilon"),
        "n_walks": Param(types.Integer(min=1), 2000),
        "n_checkpoints": Param(types.Integer(min=2), DEFAULT_CHECKPOINTS),
        "x_cutoff": Param(types.Float(min=MIN_X_CUTOFF), DEFAULT_X_CUTOFF),
        "max_steps": Param(types.Integer(min=MIN_MAX_STEPS), DEFAULT_MAX_STEPS),
    }

    def check_params(self) -> None:
        p = self.params
        self.require(0 < p["epsilon"] < 1, "epsilon", "must lie in (0, 1)")
        if p["alpha_step"] is not None:
            self.require(
                0 < p["alpha_step"] <= p["epsilon"],
                "alpha_step",
                "must lie in (0, epsilon]",
            )
        self.require(p["dt"] is None or p["dt"] > 0, "dt", "must be positive")

    def tasks(self):
        return [("tracks", None)]

    def run_task(self, task):
        p = self.params
        epsilon = p["epsilon"]
        wos_cfg = WosConfig(
            epsilon=epsilon,
            x_cutoff=p["x_cutoff"],
            max_steps=p["max_steps"],
            n_walks=p["n_walks"],
        )
        report = martingale_study(
            p["n_paths"],
            epsilon,
            p["dt"] if p["dt"] is not None else default_dt(epsilon),
            p["alpha_step"] if p["alpha_step"] is not None else epsilon,
            wos_cfg,
            self.seed,
            theta=p["theta"],
            n_checkpoints=p["n_checkpoints"],
            workers=self.workers,
        )
        drift = report.mean_increment
        if drift is not None and abs(drift.mean) > 4.0 * drift.stderr:
            logger.warning(
                "Mean martingale increment %.3g exceeds 4 sigma (%.3g)",
                drift.mean,
                drift.stderr,
            )
        return TaskResult(rows=report.rows(), summary=report.summary())
