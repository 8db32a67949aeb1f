# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Options and console shared by the sausagelab commands."""

import sys
from pathlib import Path

from oslo_config import cfg

CONFIG_ARG = cfg.StrOpt(
    "config",
    positional=True,
    required=True,
    help="Experiment configuration file (YAML)",
)

RUN_OPTS: list[cfg.Opt] = [
    CONFIG_ARG,
    cfg.IntOpt(
        "workers",
        default=None,
        help="Worker threads (overrides SAUSAGELAB_WORKERS and the file)",
    ),
    cfg.StrOpt(
        "output_dir",
        default=None,
        help="Directory receiving the run directory (overrides the file)",
    ),
    cfg.BoolOpt(
        "continue_on_error",
        default=False,
        help="Record failed tasks in the manifest and keep going",
    ),
]

VALIDATE_OPTS: list[cfg.Opt] = [
    CONFIG_ARG,
    cfg.BoolOpt(
        "show",
        default=False,
        help="Print the normalized configuration",
    ),
]

REPORT_OPTS: list[cfg.Opt] = [
    cfg.StrOpt(
        "directory",
        positional=True,
        required=True,
        help="Results directory holding run directories",
    ),
    cfg.FloatOpt(
        "c1",
        default=1.0,
        help="Fixed prefactor of the full-coverage upper curve",
    ),
]


class CLICommandError(Exception):
    """Custom command error used for CLI-friendly failures."""


class CLIConsole:
    """Lightweight console wrapper for writing CLI output."""

    def __init__(self, stream=None):
        self.stream = stream or sys.stdout

    def set_stream(self, stream) -> None:
        self.stream = stream

    def print(self, message: str = "") -> None:
        self.stream.write(f"{message}\n")
        self.stream.flush()


console = CLIConsole()


def resolve_root(app, parsed_args) -> Path | None:
    root_value = getattr(parsed_args, "root", None)
    if root_value is None and hasattr(app, "options"):
        root_value = getattr(app.options, "root", None)
    return Path(root_value) if root_value else None


def under_root(path: str | Path, root: Path | None) -> Path:
    path = Path(path)
    if root is None or path.is_absolute():
        return path
    return root / path
