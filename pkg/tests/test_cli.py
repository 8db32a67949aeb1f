# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Tests for CLI entry point."""

import io
import subprocess
import sys
from unittest.mock import patch

import pytest


def test_cli_main_execution():
    """Test that CLI can be executed as a module."""
    result = subprocess.run(
        [sys.executable, "-m", "sausagelab.cli", "--help"],
        capture_output=True,
        text=True,
    )

    assert result.returncode == 0
    assert "SausageLab" in result.stdout


@pytest.mark.parametrize("command", ["run", "validate", "report"])
def test_cli_commands_registered(command):
    from sausagelab.cli import SausagelabApp

    app = SausagelabApp(stdout=io.StringIO())
    assert app.command_manager.find_command([command])


def test_cli_without_command_prints_help(tmp_path):
    from sausagelab.cli import SausagelabApp

    app = SausagelabApp(stdout=io.StringIO())
    assert app.run(["--root", str(tmp_path)]) == 0


@patch(
    "sausagelab.cli._setup_cli_logging",
    side_effect=Exception("boom"),
)
def test_cli_logging_setup_failure(mock_setup, tmp_path):
    """Ensure CLI doesn't crash when _setup_cli_logging raises an exception."""
    from sausagelab.cli import SausagelabApp

    config = tmp_path / "experiment.yaml"
    config.write_text("kind: bounds-report\n")
    app = SausagelabApp(stdout=io.StringIO())
    assert app.run(["--root", str(tmp_path), "validate", str(config)]) == 0
    mock_setup.assert_called_once()


def test_main_returns_exit_code(tmp_path):
    from sausagelab.cli import main

    config = tmp_path / "experiment.yaml"
    config.write_text("kind: naive\nparams:\n  thetas: [2.0]\n")
    assert main(["--root", str(tmp_path), "validate", str(config)]) == 2


def test_cli_help_in_process(capsys):
    from sausagelab.cli import SausagelabApp

    app = SausagelabApp(stdout=io.StringIO())
    assert app.run(["--help"]) == 0
    assert "SausageLab" in capsys.readouterr().out


def test_cli_logs_under_cwd_without_root(tmp_path, monkeypatch):
    from sausagelab.cli import SausagelabApp

    monkeypatch.chdir(tmp_path)
    config = tmp_path / "experiment.yaml"
    config.write_text("kind: bounds-report\n")
    app = SausagelabApp(stdout=io.StringIO())
    assert app.run(["validate", str(config)]) == 0
    assert list((tmp_path / "logs").glob("sausagelab-*.log"))
