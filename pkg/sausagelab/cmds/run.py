# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Run command: execute one experiment and persist its results."""

import logging
from datetime import datetime, timezone
from pathlib import Path

from cliff.command import Command

UTC = timezone.utc

from sausagelab.cmds.common import (
    RUN_OPTS,
    CLICommandError,
    console,
    resolve_root,
    under_root,
)
from sausagelab.config import ExperimentConfig
from sausagelab.constants import (
    ERROR_LOG_FILE,
    EXIT_INCONCLUSIVE,
    EXIT_INVALID_CONFIG,
    EXIT_NUMERICAL_FAILURE,
    EXIT_OK,
    LOGS_DIR,
)
from sausagelab.exceptions import ConfigError, InvalidInputError, SausagelabError
from sausagelab.experiments import ExperimentOutcome, get_experiment_class
from sausagelab.experiments.base import STATUS_FAILED, STATUS_INCONCLUSIVE
from sausagelab.logging_setup import _attach_error_log
from sausagelab.results import write_results

logger = logging.getLogger(__name__)

STATUS_EXIT_CODES = {
    STATUS_FAILED: EXIT_NUMERICAL_FAILURE,
    STATUS_INCONCLUSIVE: EXIT_INCONCLUSIVE,
}


def _timestamp() -> str:
    return datetime.now(UTC).isoformat(timespec="seconds")


def load_config(parsed_args) -> ExperimentConfig:
    """The file's configuration with environment and command line overrides."""
    config = ExperimentConfig.load(parsed_args.config)
    return config.with_overrides(
        workers=getattr(parsed_args, "workers", None),
        output_dir=getattr(parsed_args, "output_dir", None),
        continue_on_error=getattr(parsed_args, "continue_on_error", False),
    )


def print_run_summary(
    outcome: ExperimentOutcome, run_dir: Path, error_log: Path
) -> None:
    console.print("\n" + "=" * 60)
    console.print("Run Summary")
    console.print("=" * 60)
    console.print(f"Rows written: {len(outcome.rows)}")
    console.print(f"Status: {outcome.status}")
    console.print(f"Results: {run_dir}")
    if outcome.failures:
        console.print(f"\nFailed tasks: {len(outcome.failures)}")
        for failure in outcome.failures:
            console.print(f"  - {failure['task']}: {failure['error']}")
        console.print(f"\nErrors logged to: {error_log}")
    console.print("=" * 60)


class RunCommand(Command):
    """Run an experiment described by a configuration file."""

    cli_opts = RUN_OPTS

    def get_parser(self, prog_name):
        parser = super().get_parser(prog_name)
        from sausagelab.cli import add_opts_to_parser

        add_opts_to_parser(parser, RUN_OPTS)
        return parser

    def take_action(self, parsed_args):
        console.set_stream(self.app.stdout)
        root = resolve_root(self.app, parsed_args)

        try:
            config = load_config(parsed_args)
            experiment = get_experiment_class(config.kind)(config)
            experiment.check_params()
        except (ConfigError, InvalidInputError) as exc:
            console.print(f"Invalid configuration: {exc}")
            logger.error("Invalid configuration %s: %s", parsed_args.config, exc)
            return EXIT_INVALID_CONFIG

        output_dir = under_root(config.output_dir, root)
        run_dir = output_dir / config.run_name
        base = Path(ERROR_LOG_FILE)
        stamp = datetime.now().strftime("%Y%m%dT%H%M%S")
        error_log = output_dir / LOGS_DIR / f"{base.stem}-{stamp}{base.suffix}"
        _attach_error_log(error_log)

        console.print(
            f"Running {config.kind} experiment {config.config_hash[:12]} "
            f"with {config.workers} worker(s)..."
        )
        started_at = _timestamp()
        try:
            outcome = experiment.execute()
        except KeyboardInterrupt:
            console.print("\nRun interrupted by user")
            raise CLICommandError("Run interrupted by user") from None
        except InvalidInputError as exc:
            console.print(f"Rejected input: {exc}")
            logger.error("Rejected input in %s: %s", config.kind, exc)
            return EXIT_INVALID_CONFIG
        except SausagelabError as exc:
            console.print(f"Numerical failure: {exc}")
            logger.error("Experiment %s failed: %s", config.kind, exc)
            return EXIT_NUMERICAL_FAILURE

        write_results(
            run_dir,
            config=config.to_dict(),
            config_hash=config.config_hash,
            rows=outcome.rows,
            summary=outcome.summary,
            status=outcome.status,
            started_at=started_at,
            finished_at=_timestamp(),
            failures=outcome.failures,
        )
        print_run_summary(outcome, run_dir, error_log)
        return STATUS_EXIT_CODES.get(outcome.status, EXIT_OK)
