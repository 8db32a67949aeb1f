# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Tests for experiment configuration files."""

import io
import textwrap

import pytest

from sausagelab.config import ExperimentConfig
from sausagelab.exceptions import ConfigError

NAIVE_YAML = textwrap.dedent(
    """\
    kind: naive
    seed: 7
    workers: 2
    output_dir: out
    params:
      epsilons: [0.2, 0.1]
      thetas: [0.5]
      n: 500
    """
)


def _load(text):
    return ExperimentConfig.load(io.StringIO(text))


def _field(data):
    with pytest.raises(ConfigError) as excinfo:
        ExperimentConfig.from_dict(data)
    return excinfo.value.field


class TestLoad:
    """Tests for reading configurations."""

    def test_values_and_defaults(self):
        config = _load(NAIVE_YAML)
        assert config.kind == "naive"
        assert config.seed == 7
        assert config.workers == 2
        assert config.output_dir == "out"
        assert config.continue_on_error is False
        assert config.params["epsilons"] == [0.2, 0.1]
        assert config.params["n"] == 500
        assert config.params["dt"] is None
        assert config.params["refine_margin"] == 0.0

    def test_from_path(self, tmp_path):
        path = tmp_path / "naive.yaml"
        path.write_text(NAIVE_YAML)
        assert ExperimentConfig.load(path) == _load(NAIVE_YAML)
        assert ExperimentConfig.load(str(path)) == _load(NAIVE_YAML)

    def test_dump_round_trip(self):
        config = _load(NAIVE_YAML)
        assert _load(config.dump()) == config

    def test_list_from_comma_string(self):
        config = ExperimentConfig.from_dict(
            {"kind": "naive", "params": {"epsilons": "0.2,0.1"}}
        )
        assert config.params["epsilons"] == [0.2, 0.1]

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="cannot read"):
            ExperimentConfig.load(tmp_path / "absent.yaml")

    def test_malformed_yaml(self):
        with pytest.raises(ConfigError, match="malformed"):
            _load("kind: [naive")

    def test_not_a_mapping(self):
        with pytest.raises(ConfigError, match="mapping"):
            _load("- naive\n")


class TestValidation:
    """Tests for field-level error reporting."""

    def test_unknown_top_level_key(self):
        assert _field({"kind": "naive", "sed": 1}) == "sed"

    def test_missing_kind(self):
        assert _field({"seed": 1}) == "kind"

    def test_unknown_kind(self):
        assert _field({"kind": "nope"}) == "kind"

    def test_unknown_parameter(self):
        assert _field({"kind": "naive", "params": {"nn": 3}}) == "params.nn"

    def test_negative_seed(self):
        assert _field({"kind": "naive", "seed": -1}) == "seed"

    def test_zero_workers(self):
        assert _field({"kind": "naive", "workers": 0}) == "workers"

    def test_bad_parameter_value(self):
        assert _field({"kind": "naive", "params": {"n": "many"}}) == "params.n"

    def test_scalar_for_list(self):
        field = _field({"kind": "naive", "params": {"epsilons": 0.1}})
        assert field == "params.epsilons"

    def test_theta_out_of_range(self):
        field = _field({"kind": "naive", "params": {"thetas": [1.5]}})
        assert field == "params.thetas"

    def test_params_must_be_mapping(self):
        assert _field({"kind": "naive", "params": [1]}) == "params"


class TestHash:
    """Tests for the config hash and run directory name."""

    def test_ignores_execution_settings(self):
        base = _load(NAIVE_YAML)
        other = base.with_overrides(
            workers=8, output_dir="elsewhere", continue_on_error=True, environ={}
        )
        assert other.config_hash == base.config_hash

    def test_depends_on_seed_and_params(self):
        base = ExperimentConfig.from_dict({"kind": "naive"})
        assert ExperimentConfig.from_dict({"kind": "naive", "seed": 1}).config_hash != (
            base.config_hash
        )
        changed = ExperimentConfig.from_dict({"kind": "naive", "params": {"n": 5}})
        assert changed.config_hash != base.config_hash

    def test_explicit_defaults_hash_alike(self):
        implicit = ExperimentConfig.from_dict({"kind": "naive"})
        explicit = ExperimentConfig.from_dict(
            {"kind": "naive", "seed": 0, "params": {"n": 10000}}
        )
        assert implicit.config_hash == explicit.config_hash

    def test_run_name(self):
        config = _load(NAIVE_YAML)
        assert config.run_name == f"naive-{config.config_hash[:12]}"
        assert len(config.config_hash) == 40


class TestOverrides:
    """Tests for environment and command line precedence."""

    def test_environment_over_file(self):
        config = _load(NAIVE_YAML).with_overrides(environ={"SAUSAGELAB_WORKERS": "3"})
        assert config.workers == 3

    def test_command_line_over_environment(self):
        config = _load(NAIVE_YAML).with_overrides(
            workers=5, environ={"SAUSAGELAB_WORKERS": "3"}
        )
        assert config.workers == 5

    def test_file_value_without_overrides(self):
        assert _load(NAIVE_YAML).with_overrides(environ={}).workers == 2

    def test_invalid_environment_value(self):
        with pytest.raises(ConfigError) as excinfo:
            _load(NAIVE_YAML).with_overrides(environ={"SAUSAGELAB_WORKERS": "0"})
        assert excinfo.value.field == "workers"

    def test_output_dir_and_continue(self):
        config = _load(NAIVE_YAML).with_overrides(
            output_dir="elsewhere", continue_on_error=True, environ={}
        )
        assert config.output_dir == "elsewhere"
        assert config.continue_on_error is True
