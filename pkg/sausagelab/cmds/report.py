# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Report command: merge run results and fit the bound constants."""

import logging
from pathlib import Path

from cliff.command import Command
from oslo_config import types

from sausagelab.analytic.bounds import BoundParams
from sausagelab.cmds.common import REPORT_OPTS, console
from sausagelab.constants import EXIT_INVALID_CONFIG, EXIT_OK
from sausagelab.exceptions import (
    InvalidInputError,
    ReportConflictError,
    ResultIntegrityError,
)
from sausagelab.report import build_report

logger = logging.getLogger(__name__)


def _format_constant(value: float | None) -> str:
    return "not fitted" if value is None else f"{value:.6g}"


class ReportCommand(Command):
    """Merge all runs in a results directory into report files."""

    cli_opts = REPORT_OPTS

    def get_parser(self, prog_name):
        parser = super().get_parser(prog_name)
        from sausagelab.cli import add_opts_to_parser

        add_opts_to_parser(parser, REPORT_OPTS)
        return parser

    def take_action(self, parsed_args):
        console.set_stream(self.app.stdout)
        directory = Path(parsed_args.directory)
        if not directory.is_dir():
            console.print(f"Not a directory: {directory}")
            return EXIT_INVALID_CONFIG

        try:
            c1 = types.Float(min=0.0)(getattr(parsed_args, "c1", 1.0))
            result = build_report(directory, BoundParams(c1=c1))
        except ValueError as exc:
            console.print(f"Invalid c1: {exc}")
            return EXIT_INVALID_CONFIG
        except ReportConflictError as exc:
            console.print("Refusing to merge conflicting results:")
            for conflict in exc.conflicts:
                console.print(f"  - {conflict}")
            logger.error("%s", exc)
            return EXIT_INVALID_CONFIG
        except (InvalidInputError, ResultIntegrityError) as exc:
            console.print(f"Cannot build report: {exc}")
            logger.error("%s", exc)
            return EXIT_INVALID_CONFIG

        for warning in result.warnings:
            console.print(f"Warning: {warning}")
        console.print(
            f"Merged {len(result.runs)} run(s) into {len(result.rows)} row(s)"
        )
        fit = result.fit
        for name in ("c2", "c3", "c4"):
            console.print(f"  {name}: {_format_constant(getattr(fit, name))}")
        return EXIT_OK
