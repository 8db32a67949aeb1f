# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Experiment kinds runnable from a configuration file."""

from sausagelab.exceptions import ConfigError
from sausagelab.experiments.base import (
    BaseExperiment,
    ExperimentOutcome,
    Param,
    TaskResult,
)
from sausagelab.experiments.bounds import BoundsReportExperiment
from sausagelab.experiments.corridor import CorridorExperiment
from sausagelab.experiments.coverage import NaiveExperiment, StripConditioningExperiment
from sausagelab.experiments.harmonic import (
    Eq9Experiment,
    Lemma4Experiment,
    WosCheckExperiment,
)
from sausagelab.experiments.lattice import SrwExperiment
from sausagelab.experiments.processes import (
    BridgeExperiment,
    LocalTimeExperiment,
    MartingaleExperiment,
)

EXPERIMENTS: dict[str, type[BaseExperiment]] = {
    cls.kind: cls
    for cls in (
        NaiveExperiment,
        CorridorExperiment,
        WosCheckExperiment,
        Eq9Experiment,
        Lemma4Experiment,
        LocalTimeExperiment,
        BridgeExperiment,
        StripConditioningExperiment,
        MartingaleExperiment,
        SrwExperiment,
        BoundsReportExperiment,
    )
}


def get_experiment_class(kind: str) -> type[BaseExperiment]:
    try:
        return EXPERIMENTS[kind]
    except KeyError:
        raise ConfigError(f"unknown experiment kind {kind!r}", field="kind") from None


__all__ = [
    "EXPERIMENTS",
    "BaseExperiment",
    "ExperimentOutcome",
    "Param",
    "TaskResult",
    "get_experiment_class",
]
