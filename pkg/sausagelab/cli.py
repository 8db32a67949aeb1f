# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""
Command line for sausagelab.

``sausagelab run`` executes an experiment configuration, ``validate``
checks one without running it, and ``report`` merges finished runs into
fitted bound curves. Arguments go through oslo.config; the commands are
cliff commands.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

from cliff.app import App
from cliff.commandmanager import CommandManager
from oslo_config import cfg

from sausagelab import __version__
from sausagelab.logging_setup import _setup_cli_logging

DESCRIPTION = "SausageLab - Monte Carlo laboratory for Wiener sausage coverage."

ROOT_OPT = cfg.StrOpt(
    "root",
    default=None,
    help="Directory for log files (default: current working directory)",
)


class SausagelabCommandManager(CommandManager):
    """Holds the run, validate and report commands."""

    def __init__(self) -> None:
        super().__init__(namespace="sausagelab.commands")
        # cmds imports back into this module for add_opts_to_parser
        from sausagelab.cmds import ReportCommand, RunCommand, ValidateCommand

        self.add_command("run", RunCommand)
        self.add_command("validate", ValidateCommand)
        self.add_command("report", ReportCommand)


def add_opts_to_parser(parser: argparse.ArgumentParser, opts: list[cfg.Opt]) -> None:
    """Mirror oslo.config options on a command's argparse parser."""
    for opt in opts:
        flag = opt.name.replace("_", "-")
        names = [] if not opt.short else [f"-{opt.short}"]
        names.append(flag if opt.positional else f"--{flag}")
        kwargs = opt._get_argparse_kwargs(None)
        if kwargs.get("default") is None:
            kwargs["default"] = opt.default
        parser.add_argument(*names, **kwargs)


class SausagelabApp(App):
    log = logging.getLogger(__name__)

    def __init__(self, **kwargs):
        self.conf = cfg.ConfigOpts()
        self._opts_registered = False
        super().__init__(
            description=DESCRIPTION,
            version=__version__,
            command_manager=SausagelabCommandManager(),
            deferred_help=True,
            **kwargs,
        )

    def _register_opts(self) -> None:
        if self._opts_registered:
            return
        self.conf.register_cli_opt(ROOT_OPT)
        self.conf.register_cli_opt(
            cfg.SubCommandOpt(
                "command",
                title="Commands",
                description="Available SausageLab commands.",
                handler=self._add_subcommands,
            )
        )
        self._opts_registered = True

    def _add_subcommands(self, subparsers) -> None:
        # Command options carry required positionals, so they live on the
        # subcommand parsers and never on the top-level one.
        for name, command_ep in self.command_manager:
            command_class = command_ep.load()
            doc = command_class.__doc__ or ""
            parser = subparsers.add_parser(
                name,
                description=doc,
                help=doc.strip().splitlines()[0] if doc.strip() else None,
            )
            add_opts_to_parser(parser, list(getattr(command_class, "cli_opts", [])))
            parser.set_defaults(command=name, __command_class=command_class)

    def _parsed_args(self) -> argparse.Namespace:
        values = {
            key: value
            for key, value in vars(self.conf._namespace).items()
            if not key.startswith("_") or key == "__command_class"
        }
        return argparse.Namespace(**values)

    def initialize_app(self, argv: list[str]) -> None:
        """Send logs to ``<root>/logs``; a failure here never stops a command."""
        try:
            _setup_cli_logging(Path(self.options.root) if self.options.root else None)
        except Exception as exc:
            self.log.warning("Failed to configure CLI logging: %s", exc)

    def run(self, argv: Sequence[str] | None = None):
        """
        Parse ``argv`` and execute the chosen command.

        Returns the command's exit code: 0 on success, 2 for invalid input,
        3 on numerical failure and 4 for an inconclusive run. Without a
        command the help is printed.
        """
        self._register_opts()
        args = list(argv) if argv is not None else None
        try:
            self.conf(
                args,
                project="sausagelab",
                prog="sausagelab",
                description=DESCRIPTION,
                version=__version__,
                default_config_files=[],
                default_config_dirs=[],
            )
        except SystemExit as exc:
            return exc.code

        self.options = self._parsed_args()
        self.initialize_app(args or [])
        command_class = getattr(self.options, "__command_class", None)
        if command_class is None:
            self.conf.print_help()
            return 0

        cmd = command_class(self, None)
        result = cmd.run(self.options)
        self.clean_up(cmd, result, None)
        return result


def main(argv: Sequence[str] | None = None) -> int:
    return SausagelabApp().run(argv)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
