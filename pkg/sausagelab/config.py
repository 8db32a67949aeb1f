# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Experiment configuration files.

A configuration is a YAML mapping::

    kind: naive
    seed: 7
    workers: 1
    output_dir: results
    continue_on_error: false
    params:
      epsilons: [0.1]
      thetas: [0.5]
      n: 10000

Every parameter of every experiment kind is declared with an
``oslo_config.types`` converter, which coerces and range-checks the value.
Unknown keys are rejected at both levels so that a typo in a sweep never
silently falls back to a default.
"""

import json
import logging
import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, TextIO

import yaml
from oslo_config import types

from sausagelab.constants import WORKERS_ENV_VAR
from sausagelab.exceptions import ConfigError
from sausagelab.experiments import EXPERIMENTS, get_experiment_class
from sausagelab.results import blob_hash

logger = logging.getLogger(__name__)

TOP_LEVEL_TYPES = {
    "kind": types.String(choices=sorted(EXPERIMENTS)),
    "seed": types.Integer(min=0),
    "workers": types.Integer(min=1),
    "output_dir": types.String(),
    "continue_on_error": types.Boolean(),
}

_WORKERS_TYPE = types.Integer(min=1)


def _convert(converter: types.ConfigType, value: Any, name: str) -> Any:
    try:
        return converter(value)
    except (AttributeError, TypeError, ValueError) as exc:
        raise ConfigError(f"invalid value {value!r} ({exc})", field=name) from exc


@dataclass(frozen=True)
class ExperimentConfig:
    """A validated, fully defaulted experiment configuration."""

    kind: str
    seed: int = 0
    workers: int = 1
    output_dir: str = "results"
    continue_on_error: bool = False
    params: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data: Any) -> "ExperimentConfig":
        if not isinstance(data, dict):
            raise ConfigError("configuration must be a mapping")
        unknown = sorted(set(data) - set(TOP_LEVEL_TYPES) - {"params"})
        if unknown:
            raise ConfigError("unknown key", field=unknown[0])
        if "kind" not in data:
            raise ConfigError("experiment kind is required", field="kind")

        values = {
            name: _convert(converter, data[name], name)
            for name, converter in TOP_LEVEL_TYPES.items()
            if name in data and data[name] is not None
        }
        experiment_class = get_experiment_class(values["kind"])

        raw_params = data.get("params") or {}
        if not isinstance(raw_params, dict):
            raise ConfigError("params must be a mapping", field="params")
        schema = experiment_class.PARAMS
        unknown = sorted(set(raw_params) - set(schema))
        if unknown:
            raise ConfigError("unknown parameter", field=f"params.{unknown[0]}")

        params = {}
        for name, spec in sorted(schema.items()):
            value = raw_params.get(name, spec.default)
            if value is None:
                params[name] = None
            else:
                params[name] = _convert(spec.type, value, f"params.{name}")
        return cls(params=params, **values)

    @classmethod
    def load(cls, source: str | Path | TextIO) -> "ExperimentConfig":
        """Read a YAML configuration from a path or an open stream."""
        try:
            if isinstance(source, (str, Path)):
                with open(source, encoding="utf-8") as f:
                    data = yaml.safe_load(f)
            else:
                data = yaml.safe_load(source)
        except OSError as exc:
            raise ConfigError(f"cannot read configuration: {exc}") from exc
        except yaml.YAMLError as exc:
            raise ConfigError(f"malformed YAML: {exc}") from exc
        return cls.from_dict(data)

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "seed": self.seed,
            "workers": self.workers,
            "output_dir": self.output_dir,
            "continue_on_error": self.continue_on_error,
            "params": {
                name: list(value) if isinstance(value, (list, tuple)) else value
                for name, value in sorted(self.params.items())
            },
        }

    def dump(self, stream: TextIO | None = None) -> str | None:
        return yaml.safe_dump(self.to_dict(), stream, sort_keys=True)

    def scientific_dict(self) -> dict[str, Any]:
        """The part of the config that determines result contents."""
        full = self.to_dict()
        return {"kind": full["kind"], "seed": full["seed"], "params": full["params"]}

    @property
    def config_hash(self) -> str:
        """Content hash of the scientific part; worker count and paths do not enter."""
        canonical = json.dumps(
            self.scientific_dict(), sort_keys=True, separators=(",", ":")
        )
        return blob_hash(canonical.encode("utf-8"))

    @property
    def run_name(self) -> str:
        return f"{self.kind}-{self.config_hash[:12]}"

    def with_overrides(
        self,
        workers: Any = None,
        output_dir: str | None = None,
        continue_on_error: bool | None = None,
        environ: dict[str, str] | None = None,
    ) -> "ExperimentConfig":
        """Apply environment then command line overrides.

        Precedence is command line, then ``SAUSAGELAB_WORKERS``, then the file.
        """
        environ = os.environ if environ is None else environ
        changes: dict[str, Any] = {}
        env_workers = environ.get(WORKERS_ENV_VAR)
        if env_workers:
            changes["workers"] = _convert(_WORKERS_TYPE, env_workers, "workers")
        if workers is not None:
            changes["workers"] = _convert(_WORKERS_TYPE, workers, "workers")
        if output_dir:
            changes["output_dir"] = str(output_dir)
        if continue_on_error:
            changes["continue_on_error"] = True
        if changes:
            logger.debug("Config overrides: %s", changes)
        return replace(self, **changes)
