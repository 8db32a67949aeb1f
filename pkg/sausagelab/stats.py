# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Monte Carlo estimates and the small statistics shared by experiments."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from sausagelab.exceptions import InvalidInputError


@dataclass(frozen=True)
class Estimate:
    """A Monte Carlo result.

    When ``log_domain`` is true, ``mean`` and ``stderr`` describe the natural
    logarithm of the estimated quantity.
    """

    mean: float
    stderr: float
    n: int
    seed_record: str = ""
    log_domain: bool = False
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInputError(f"Estimate needs n >= 1, got {self.n}")
        if not (self.stderr >= 0):
            raise InvalidInputError(f"stderr must be nonnegative: {self.stderr}")

    @property
    def relative_error(self) -> float:
        if self.mean == 0:
            return math.inf
        return self.stderr / abs(self.mean)

    def to_dict(self) -> dict:
        return asdict(self)


def proportion(
    hits: np.ndarray, seed_record: str = "", wilson: bool = True
) -> Estimate:
    """Estimate a probability from Bernoulli outcomes.

    With ``wilson`` the standard error is the half-width of the one-sigma
    Wilson score interval, which stays positive when every outcome agrees.
    """
    hits = np.asarray(hits, dtype=bool)
    n = int(hits.size)
    if n == 0:
        raise InvalidInputError("Cannot estimate a proportion from zero samples")
    p = float(np.count_nonzero(hits)) / n
    if wilson:
        stderr = math.sqrt(p * (1.0 - p) / n + 1.0 / (4.0 * n * n)) / (1.0 + 1.0 / n)
    else:
        stderr = math.sqrt(p * (1.0 - p) / n)
    return Estimate(mean=p, stderr=stderr, n=n, seed_record=seed_record)


def sample_mean(values: np.ndarray, seed_record: str = "") -> Estimate:
    """Mean and standard error of iid samples."""
    values = np.asarray(values, dtype=float)
    n = int(values.size)
    if n == 0:
        raise InvalidInputError("Cannot estimate a mean from zero samples")
    stderr = float(np.std(values, ddof=1) / math.sqrt(n)) if n > 1 else 0.0
    return Estimate(
        mean=float(np.mean(values)), stderr=stderr, n=n, seed_record=seed_record
    )


def combined_stderr(*stderrs: float) -> float:
    return math.sqrt(sum(s * s for s in stderrs))


def within(a: float, b: float, stderr: float, sigmas: float) -> bool:
    """True when |a - b| is within ``sigmas`` standard errors."""
    return abs(a - b) <= sigmas * stderr
