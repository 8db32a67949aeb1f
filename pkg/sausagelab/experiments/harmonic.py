# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Checks of the strip hitting probability f."""

import logging

from oslo_config import types

from sausagelab.constants import (
    DEFAULT_MAX_STEPS,
    DEFAULT_X_CUTOFF,
    FD_MAX_SWEEPS,
    FD_TOLERANCE,
    MIN_MAX_STEPS,
    MIN_X_CUTOFF,
    STREAM_WOS,
)
from sausagelab.experiments.base import BaseExperiment, Param, TaskResult, float_list
from sausagelab.streams import StreamKey
from sausagelab.wos.checks import (
    DEFAULT_ALPHA_GRID,
    DEFAULT_Y_GRID,
    AlphaGrid,
    eq9_identity_check,
    lemma4_shape_checks,
    wos_fd_agreement,
)
from sausagelab.wos.fd import fd_oracle
from sausagelab.wos.walk import WosConfig

logger = logging.getLogger(__name__)

WALK_PARAMS = {
    "x_cutoff": Param(types.Float(min=MIN_X_CUTOFF), DEFAULT_X_CUTOFF),
    "max_steps": Param(types.Integer(min=MIN_MAX_STEPS), DEFAULT_MAX_STEPS),
}


class _WalkExperiment(BaseExperiment):
    def walk_config(self, epsilon: float) -> WosConfig:
        return WosConfig(
            epsilon=epsilon,
            x_cutoff=self.params["x_cutoff"],
            max_steps=self.params["max_steps"],
            n_walks=self.params["n_walks"],
        )

    def stream(self, *index: int) -> StreamKey:
        return StreamKey(self.seed, (STREAM_WOS, *index))


class WosCheckExperiment(_WalkExperiment):
    """Walk-on-spheres against the finite-difference oracle on a grid of starts."""

    kind = "wos-check"
    PARAMS = {
        **WALK_PARAMS,
        "epsilon": Param(types.Float(min=0.0, max=1.0), 0.05),
        "n_walks": Param(types.Integer(min=1), 100_000),
        "fd_h": Param(types.Float(min=0.0), None, "FD spacing; default epsilon/4"),
        "fd_tolerance": Param(types.Float(min=0.0), FD_TOLERANCE),
        "fd_max_sweeps": Param(types.Integer(min=1), FD_MAX_SWEEPS),
        "xs": Param(float_list(), [-0.5, -0.25, 0.0, 0.25, 0.5]),
        "ys": Param(float_list(min=-1.0, max=1.0), [0.1, 0.3, 0.5, 0.7, 0.9]),
    }

    def check_params(self) -> None:
        p = self.params
        self.require(0 < p["epsilon"] < 1, "epsilon", "must lie in (0, 1)")
        if p["fd_h"] is not None:
            self.require(
                0 < p["fd_h"] <= p["epsilon"] / 4, "fd_h", "must lie in (0, epsilon/4]"
            )
        self.require(bool(p["xs"]) and bool(p["ys"]), "xs", "start grid is empty")
        self.require(
            all(abs(x) < p["x_cutoff"] for x in p["xs"]), "xs", "starts beyond x_cutoff"
        )

    def tasks(self):
        return [("wos-fd", None)]

    def run_task(self, task):
        p = self.params
        epsilon = p["epsilon"]
        h = p["fd_h"] if p["fd_h"] is not None else epsilon / 4
        fd = fd_oracle(
            epsilon,
            h,
            x_cutoff=p["x_cutoff"],
            tolerance=p["fd_tolerance"],
            max_sweeps=p["fd_max_sweeps"],
        )
        starts = [(x, y) for x in p["xs"] for y in p["ys"]]
        rows = wos_fd_agreement(
            self.walk_config(epsilon), fd, starts, self.stream(0), self.workers
        )
        mismatches = sum(1 for row in rows if row["flag"] != "ok")
        if mismatches:
            logger.warning(
                "%d of %d starts disagree with the FD oracle", mismatches, len(rows)
            )
        summary = {
            "epsilon": epsilon,
            "fd_h": h,
            "fd_residual": fd.residual,
            "fd_sweeps": fd.sweeps,
            "mismatches": mismatches,
            "truncated": sum(row["truncated"] for row in rows),
        }
        rows = [{"epsilon": epsilon, **row} for row in rows]
        return TaskResult(rows=rows, summary=summary)


class Eq9Experiment(_WalkExperiment):
    """The first-order identity for g(y) = integral of f over alpha."""

    kind = "eq9"
    PARAMS = {
        **WALK_PARAMS,
        "epsilon": Param(types.Float(min=0.0, max=1.0), 0.01),
        "ys": Param(float_list(min=-1.0, max=1.0), [0.5]),
        "dy": Param(types.Float(min=0.0), 0.05),
        "n_walks": Param(types.Integer(min=1), 100_000),
        "alpha_step": Param(types.Float(min=0.0), 0.25),
        "alpha_max": Param(types.Float(min=0.0), DEFAULT_X_CUTOFF),
    }

    def check_params(self) -> None:
        p = self.params
        self.require(0 < p["epsilon"] < 1, "epsilon", "must lie in (0, 1)")
        self.require(bool(p["ys"]), "ys", "at least one y is needed")
        for y in p["ys"]:
            self.require(0 < abs(y) < 1, "ys", f"y={y} must satisfy 0 < |y| < 1")
            self.require(
                0 < p["dy"] < (1 - abs(y)) / 4,
                "dy",
                f"dy must lie in (0, (1-|y|)/4) for y={y}",
            )
        self.require(p["alpha_step"] > 0, "alpha_step", "must be positive")
        self.require(
            0 < p["alpha_max"] <= p["x_cutoff"],
            "alpha_max",
            "must lie in (0, x_cutoff]",
        )

    def tasks(self):
        return [(f"y={y!r}", (k, y)) for k, y in enumerate(self.params["ys"])]

    def run_task(self, task):
        k, y = task
        p = self.params
        report = eq9_identity_check(
            y,
            p["epsilon"],
            p["dy"],
            self.walk_config(p["epsilon"]),
            AlphaGrid(p["alpha_step"], p["alpha_max"]),
            self.stream(1, k),
            self.workers,
        )
        summary = {
            "lhs": report.lhs.to_dict(),
            "rhs": report.rhs.to_dict(),
            "difference": report.difference.to_dict(),
            "c7": report.c7,
            "consistent": report.consistent,
            "inconclusive": report.inconclusive,
        }
        return TaskResult(
            rows=report.rows(), summary=summary, inconclusive=report.inconclusive
        )


class Lemma4Experiment(_WalkExperiment):
    """Scaled sups, monotonicity and decay of f across several epsilons."""

    kind = "lemma4"
    PARAMS = {
        **WALK_PARAMS,
        "epsilons": Param(float_list(min=0.0, max=0.25), [0.05, 0.02, 0.01]),
        "n_walks": Param(types.Integer(min=1), 20_000),
        "y_grid": Param(float_list(min=0.0, max=1.0), list(DEFAULT_Y_GRID)),
        "alpha_grid": Param(float_list(min=0.0), list(DEFAULT_ALPHA_GRID)),
    }

    def check_params(self) -> None:
        p = self.params
        self.require(bool(p["epsilons"]), "epsilons", "at least one epsilon is needed")
        self.require(
            all(0 < eps < 0.25 for eps in p["epsilons"]),
            "epsilons",
            "epsilon must lie in (0, 1/4)",
        )
        self.require(
            all(0 < y < 1 for y in p["y_grid"]), "y_grid", "must lie in (0, 1)"
        )
        self.require(
            all(0 < a < p["x_cutoff"] for a in p["alpha_grid"]),
            "alpha_grid",
            "must lie in (0, x_cutoff)",
        )

    def tasks(self):
        return [("shape", None)]

    def run_task(self, task):
        p = self.params
        report = lemma4_shape_checks(
            p["epsilons"],
            self.walk_config(p["epsilons"][0]),
            self.stream(2),
            y_grid=tuple(p["y_grid"]),
            alpha_grid=tuple(p["alpha_grid"]),
            workers=self.workers,
        )
        if not report.c5_stable:
            logger.warning(
                "Scaled sup along y varies by %.3g across epsilon",
                report.c5_stability,
            )
        summary = {
            "per_epsilon": report.per_epsilon,
            "c5_stability": report.c5_stability,
            "c6_stability": report.c6_stability,
            "c5_stable": report.c5_stable,
            "inconclusive_points": report.inconclusive_points,
        }
        return TaskResult(
            rows=report.rows(),
            summary=summary,
            inconclusive=report.inconclusive_points > 0,
        )
