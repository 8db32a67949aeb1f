# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Tests for the report command."""

import io
import json

from sausagelab.cli import SausagelabApp
from sausagelab.constants import (
    EXIT_INVALID_CONFIG,
    EXIT_OK,
    FIT_FILE,
    REPORT_FILE,
    REPORT_LONG_FILE,
)

NAIVE_CONFIG = """\
kind: naive
seed: {seed}
params:
  epsilons: [0.3, 0.2]
  thetas: [0.5]
  n: 60
"""


def run_cli(args):
    stdout = io.StringIO()
    app = SausagelabApp(stdout=stdout)
    code = app.run(args)
    return code, stdout.getvalue()


def _run_naive(tmp_path, seed):
    config = tmp_path / f"naive-{seed}.yaml"
    config.write_text(NAIVE_CONFIG.format(seed=seed))
    out = tmp_path / "results"
    code, _ = run_cli(
        ["--root", str(tmp_path), "run", str(config), "--output-dir", str(out)]
    )
    assert code == 0
    return out


def test_report_merges_runs(tmp_path):
    results = _run_naive(tmp_path, 1)
    code, output = run_cli(["--root", str(tmp_path), "report", str(results)])
    assert code == EXIT_OK
    assert "Merged 1 run(s)" in output
    for name in (REPORT_FILE, REPORT_LONG_FILE, FIT_FILE):
        assert (results / name).exists()
    fit = json.loads((results / FIT_FILE).read_text())
    assert fit["c1"] == 1.0
    assert set(fit["n_points"]) == {"c2", "c3", "c4"}


def test_report_refuses_conflicting_runs(tmp_path):
    _run_naive(tmp_path, 1)
    results = _run_naive(tmp_path, 2)
    code, output = run_cli(["--root", str(tmp_path), "report", str(results)])
    assert code == EXIT_INVALID_CONFIG
    assert "Refusing to merge" in output


def test_report_empty_directory_warns(tmp_path):
    empty = tmp_path / "empty"
    empty.mkdir()
    code, output = run_cli(["--root", str(tmp_path), "report", str(empty)])
    assert code == EXIT_OK
    assert "No result manifests found" in output


def test_report_missing_directory(tmp_path):
    code, output = run_cli(
        ["--root", str(tmp_path), "report", str(tmp_path / "nowhere")]
    )
    assert code == EXIT_INVALID_CONFIG
    assert "Not a directory" in output


def test_report_rejects_non_positive_c1(tmp_path):
    results = _run_naive(tmp_path, 1)
    code, output = run_cli(
        ["--root", str(tmp_path), "report", str(results), "--c1", "0"]
    )
    assert code == EXIT_INVALID_CONFIG
    assert "c1" in output
