# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Tests for the experiment base class."""

import math

import pytest

from sausagelab.config import ExperimentConfig
from sausagelab.exceptions import ConfigError, NumericalError
from sausagelab.experiments import EXPERIMENTS, get_experiment_class
from sausagelab.experiments.base import (
    STATUS_FAILED,
    STATUS_INCONCLUSIVE,
    STATUS_OK,
    BaseExperiment,
    TaskResult,
    log_point,
)
from sausagelab.stats import Estimate


class ToyExperiment(BaseExperiment):
    kind = "toy"

    def __init__(self, config, fail_on=(), inconclusive_on=()):
        super().__init__(config)
        self.fail_on = fail_on
        self.inconclusive_on = inconclusive_on

    def tasks(self):
        return [(f"task-{i}", i) for i in (1, 2, 3)]

    def run_task(self, task):
        if task in self.fail_on:
            raise NumericalError(f"task {task} diverged")
        return TaskResult(
            rows=[{"value": task * 10}],
            summary={"value": task},
            points=[log_point("theta", 0.1, 0.5, Estimate(0.5, 0.1, 10))],
            inconclusive=task in self.inconclusive_on,
        )


def _config(**kwargs):
    return ExperimentConfig(kind="naive", seed=3, params={"n": 1}, **kwargs)


def test_all_tasks_ok():
    outcome = ToyExperiment(_config()).execute()
    assert outcome.status == STATUS_OK
    assert [row["task"] for row in outcome.rows] == ["task-1", "task-2", "task-3"]
    assert outcome.rows[0] == {"task": "task-1", "value": 10}
    summary = outcome.summary
    assert summary["kind"] == "toy"
    assert summary["seed"] == 3
    assert summary["config_hash"] == _config().config_hash
    assert set(summary["tasks"]) == {"task-1", "task-2", "task-3"}
    assert len(summary["points"]) == 3


def test_failure_aborts_by_default():
    with pytest.raises(NumericalError):
        ToyExperiment(_config(), fail_on=(2,)).execute()


def test_failure_recorded_when_continuing():
    outcome = ToyExperiment(_config(continue_on_error=True), fail_on=(2,)).execute()
    assert outcome.status == STATUS_FAILED
    assert outcome.failures == [{"task": "task-2", "error": "task 2 diverged"}]
    assert [row["task"] for row in outcome.rows] == ["task-1", "task-3"]
    assert outcome.summary["failures"] == outcome.failures


def test_inconclusive_task():
    outcome = ToyExperiment(_config(), inconclusive_on=(3,)).execute()
    assert outcome.status == STATUS_INCONCLUSIVE


def test_require_names_the_field():
    experiment = ToyExperiment(_config())
    with pytest.raises(ConfigError) as excinfo:
        experiment.require(False, "n", "must be positive")
    assert excinfo.value.field == "params.n"


class TestLogPoint:
    def test_linear_estimate(self):
        point = log_point("theta", 0.1, 0.5, Estimate(0.2, 0.02, 100), "v")
        assert point["log_p"] == pytest.approx(math.log(0.2))
        assert point["stderr"] == pytest.approx(0.1)
        assert point["variant"] == "v"

    def test_log_domain_estimate(self):
        est = Estimate(-5.0, 0.3, 100, log_domain=True)
        point = log_point("cover", 0.1, 1.0, est, log_domain=True)
        assert point["log_p"] == -5.0
        assert point["stderr"] == 0.3

    def test_zero_estimate(self):
        point = log_point("theta", 0.1, 0.5, Estimate(0.0, 0.0, 100))
        assert point["log_p"] == -math.inf

    def test_missing_estimate(self):
        assert log_point("theta", 0.1, 0.5, None)["log_p"] == -math.inf


def test_registry_lists_every_kind():
    assert set(EXPERIMENTS) == {
        "naive",
        "corridor",
        "wos-check",
        "eq9",
        "lemma4",
        "local-time",
        "bridge",
        "strip-cond",
        "martingale",
        "srw",
        "bounds-report",
    }
    for kind, cls in EXPERIMENTS.items():
        assert cls.kind == kind
        assert get_experiment_class(kind) is cls


def test_unknown_kind():
    with pytest.raises(ConfigError) as excinfo:
        get_experiment_class("nope")
    assert excinfo.value.field == "kind"
