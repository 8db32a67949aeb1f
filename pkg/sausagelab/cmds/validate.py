# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Validate command: check a configuration without running it."""

import logging

from cliff.command import Command

from sausagelab.cmds.common import VALIDATE_OPTS, console
from sausagelab.config import ExperimentConfig
from sausagelab.constants import EXIT_INVALID_CONFIG, EXIT_OK
from sausagelab.exceptions import ConfigError, InvalidInputError
from sausagelab.experiments import get_experiment_class

logger = logging.getLogger(__name__)


class ValidateCommand(Command):
    """Check an experiment configuration and print its run name."""

    cli_opts = VALIDATE_OPTS

    def get_parser(self, prog_name):
        parser = super().get_parser(prog_name)
        from sausagelab.cli import add_opts_to_parser

        add_opts_to_parser(parser, VALIDATE_OPTS)
        return parser

    def take_action(self, parsed_args):
        console.set_stream(self.app.stdout)
        try:
            config = ExperimentConfig.load(parsed_args.config)
            get_experiment_class(config.kind)(config).check_params()
        except (ConfigError, InvalidInputError) as exc:
            console.print(f"Invalid configuration: {exc}")
            logger.error("Invalid configuration %s: %s", parsed_args.config, exc)
            return EXIT_INVALID_CONFIG

        console.print(f"Configuration is valid: {config.kind} ({config.config_hash})")
        console.print(f"Run directory: {config.run_name}")
        if getattr(parsed_args, "show", False):
            console.print(config.dump().rstrip())
        return EXIT_OK
