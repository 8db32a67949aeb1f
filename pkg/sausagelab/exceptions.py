# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Custom exceptions for sausagelab."""


class SausagelabError(Exception):
    """Base exception for all sausagelab errors."""

    pass  # pragma: no cover


class InvalidInputError(SausagelabError):
    """Raised when an operation receives input outside its domain."""

    pass  # pragma: no cover


class NumericalError(SausagelabError):
    """Raised when a numerical procedure fails to reach its tolerance."""

    def __init__(self, message: str, achieved_error: float | None = None):
        super().__init__(message)
        self.achieved_error = achieved_error


class QuadratureError(NumericalError):
    """Raised when adaptive quadrature does not converge."""

    pass  # pragma: no cover


class ConvergenceError(NumericalError):
    """Raised when an iterative solver exhausts its sweep budget."""

    pass  # pragma: no cover


class CorridorStallError(NumericalError):
    """Raised when corridor rejection sampling stops accepting."""

    pass  # pragma: no cover


class ConfigError(SausagelabError):
    """Raised when an experiment configuration is invalid."""

    def __init__(self, message: str, field: str | None = None):
        super().__init__(f"{field}: {message}" if field else message)
        self.field = field


class ReportConflictError(SausagelabError):
    """Raised when result manifests cannot be merged."""

    def __init__(self, conflicts: list[str]):
        super().__init__("Conflicting results: " + "; ".join(conflicts))
        self.conflicts = conflicts


class ResultIntegrityError(SausagelabError):
    """Raised when a manifest references missing or modified files."""

    pass  # pragma: no cover
