# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Base experiment class."""

from __future__ import annotations

import logging
import math
import threading
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, NamedTuple

from oslo_config import types

from sausagelab.exceptions import ConfigError
from sausagelab.stats import Estimate

if TYPE_CHECKING:
    from sausagelab.config import ExperimentConfig

logger = logging.getLogger(__name__)

STATUS_OK = "ok"
STATUS_INCONCLUSIVE = "inconclusive"
STATUS_FAILED = "failed"

TARGET_THETA = "theta"
TARGET_COVER = "cover"


class Param(NamedTuple):
    """Declared experiment parameter: converter, default (None means optional)."""

    type: types.ConfigType
    default: Any
    help: str = ""


def float_list(**kwargs) -> types.List:
    return types.List(item_type=types.Float(**kwargs))


def int_list(**kwargs) -> types.List:
    return types.List(item_type=types.Integer(**kwargs))


@dataclass
class TaskResult:
    rows: list[dict]
    summary: dict[str, Any]
    points: list[dict] = field(default_factory=list)
    inconclusive: bool = False


@dataclass
class ExperimentOutcome:
    rows: list[dict]
    summary: dict[str, Any]
    failures: list[dict[str, str]]
    status: str


class RunContext:
    """Task bookkeeping for one experiment run."""

    def __init__(self, kind: str):
        self.kind = kind
        self.successes: list[str] = []
        self.failures: list[tuple[str, str]] = []
        self.lock = threading.Lock()

    def add_success(self, task: str) -> None:
        with self.lock:
            self.successes.append(task)

    def add_failure(self, task: str, error: str) -> None:
        with self.lock:
            self.failures.append((task, error))


def log_point(
    target: str,
    epsilon: float,
    theta: float,
    estimate: Estimate | None,
    variant: str = "",
    log_domain: bool = False,
) -> dict[str, Any]:
    """
    One empirical coverage point for the report.

    Linear estimates are moved to the log domain with the delta method; a
    zero estimate gives log_p = -inf.
    """
    if estimate is None:
        log_p, stderr = -math.inf, math.nan
    elif log_domain:
        log_p, stderr = estimate.mean, estimate.stderr
    elif estimate.mean > 0:
        log_p, stderr = math.log(estimate.mean), estimate.stderr / estimate.mean
    else:
        log_p, stderr = -math.inf, math.nan
    return {
        "target": target,
        "epsilon": epsilon,
        "theta": theta,
        "log_p": log_p,
        "stderr": stderr,
        "variant": variant,
    }


class BaseExperiment(ABC):
    """Abstract base class for experiment kinds.

    Subclasses declare ``kind`` and ``PARAMS`` and split their work into
    named tasks. A task failure aborts the run unless the config asks to
    continue on error, in which case it is recorded and the remaining tasks
    still run.
    """

    kind: str = ""
    PARAMS: dict[str, Param] = {}

    def __init__(self, config: ExperimentConfig):
        self.config = config
        self.params = config.params
        self.seed = config.seed
        self.workers = config.workers

    def require(self, condition: bool, name: str, message: str) -> None:
        if not condition:
            raise ConfigError(message, field=f"params.{name}")

    def check_params(self) -> None:
        """Cross-field checks beyond the per-value types; raise ConfigError."""

    @abstractmethod
    def tasks(self) -> list[tuple[str, Any]]:
        """Named units of work, in a fixed order."""
        pass  # pragma: no cover

    @abstractmethod
    def run_task(self, task: Any) -> TaskResult:
        pass  # pragma: no cover

    def execute(self) -> ExperimentOutcome:
        self.check_params()
        context = RunContext(self.kind)
        config_hash = self.config.config_hash
        logger.info("Starting %s experiment (config %s)", self.kind, config_hash)

        rows: list[dict] = []
        points: list[dict] = []
        task_summaries: dict[str, Any] = {}
        inconclusive = False
        for name, task in self.tasks():
            logger.debug("Running task %s", name)
            try:
                result = self.run_task(task)
            except Exception as exc:
                if not self.config.continue_on_error:
                    raise
                logger.error("Task %s failed: %s", name, exc)
                context.add_failure(name, str(exc))
                continue
            context.add_success(name)
            rows.extend({"task": name, **row} for row in result.rows)
            points.extend(result.points)
            task_summaries[name] = result.summary
            if result.inconclusive:
                logger.warning("Task %s is inconclusive", name)
                inconclusive = True

        failures = [{"task": t, "error": e} for t, e in context.failures]
        if failures:
            status = STATUS_FAILED
        elif inconclusive:
            status = STATUS_INCONCLUSIVE
        else:
            status = STATUS_OK
        summary = {
            "kind": self.kind,
            "seed": self.seed,
            "config": self.config.scientific_dict(),
            "config_hash": config_hash,
            "tasks": task_summaries,
            "points": points,
            "failures": failures,
            "status": status,
        }
        logger.info(
            "Finished %s experiment: %d tasks ok, %d failed, status %s",
            self.kind,
            len(context.successes),
            len(context.failures),
            status,
        )
        return ExperimentOutcome(
            rows=rows, summary=summary, failures=failures, status=status
        )
