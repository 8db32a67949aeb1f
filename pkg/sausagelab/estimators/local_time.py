# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Binned local time of 1D Brownian motion and the tail of its supremum."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from sausagelab.constants import (
    CHUNK_SIZE,
    STREAM_LOCAL_TIME,
    TAIL_MIN_BEYOND_MEDIAN,
    TAIL_MIN_EXCEEDANCES,
)
from sausagelab.exceptions import InvalidInputError, NumericalError
from sausagelab.paths.sample import PathSample, sample_path
from sausagelab.pool import map_ordered
from sausagelab.streams import StreamKey

logger = logging.getLogger(__name__)

CONSERVATION_TOLERANCE = 1e-9
TAIL_LEVELS = 60


@dataclass(frozen=True, eq=False)
class LocalTimeProfile:
    """Occupation density on bins of width ``bin_width`` centered at k * bin_width."""

    bin_width: float
    bin_centers: np.ndarray
    density: np.ndarray
    sup_stat: float
    duration: float

    @property
    def conservation_error(self) -> float:
        return abs(float(np.sum(self.density) * self.bin_width) - self.duration)


def build_profile(path: PathSample, bin_width: float) -> LocalTimeProfile:
    """
    Attribute each time step to the bin of its left grid point.

    Raises:
        NumericalError: If the profile does not integrate to the path duration
    """
    if bin_width <= 0:
        raise InvalidInputError(f"bin_width must be positive, got {bin_width}")
    level = path.y[:-1] if len(path) > 1 else path.y
    index = np.floor(level / bin_width + 0.5).astype(np.int64)
    low = int(index.min())
    weight = path.dt if len(path) > 1 else 0.0
    occupation = np.bincount(index - low, weights=np.full(index.size, weight))
    density = occupation / bin_width
    profile = LocalTimeProfile(
        bin_width=bin_width,
        bin_centers=(np.arange(density.size) + low) * bin_width,
        density=density,
        sup_stat=float(density.max()),
        duration=path.duration,
    )
    if profile.conservation_error > CONSERVATION_TOLERANCE:
        raise NumericalError(
            "Occupation does not add up to the path duration",
            achieved_error=profile.conservation_error,
        )
    return profile


@dataclass(frozen=True)
class TailReport:
    """Least-squares fit of log P[U >= u] against u^2."""

    n_paths: int
    slope: float
    intercept: float
    r_squared: float
    c8: float
    points: list[dict]
    min_sup: float
    max_conservation_error: float
    beyond_median: int
    inconclusive: bool

    def rows(self) -> list[dict]:
        return list(self.points)

    def summary(self) -> dict:
        return {
            "n_paths": self.n_paths,
            "slope": self.slope,
            "intercept": self.intercept,
            "r_squared": self.r_squared,
            "c8": self.c8,
            "min_sup": self.min_sup,
            "max_conservation_error": self.max_conservation_error,
            "beyond_median": self.beyond_median,
            "inconclusive": self.inconclusive,
        }


def sup_samples(
    n_paths: int, dt: float, bin_width: float, seed: int, workers: int = 1
) -> tuple[np.ndarray, float]:
    """Sup of the binned local time at time 1 for ``n_paths`` paths."""

    def run(chunk: range) -> np.ndarray:
        out = np.empty((len(chunk), 2))
        for pos, i in enumerate(chunk):
            path = sample_path(dt, 1.0, StreamKey(seed, (STREAM_LOCAL_TIME, i)), dim=1)
            profile = build_profile(path, bin_width)
            out[pos] = profile.sup_stat, profile.conservation_error
        return out

    chunks = [
        range(lo, min(lo + CHUNK_SIZE, n_paths)) for lo in range(0, n_paths, CHUNK_SIZE)
    ]
    table = np.vstack(map_ordered(run, chunks, workers))
    return table[:, 0], float(table[:, 1].max())


def local_time_tail(
    n_paths: int, dt: float, bin_width: float, seed: int, workers: int = 1
) -> TailReport:
    """
    Sample sup-local-time values and fit the Gaussian-type decay of their tail.

    Only tail levels with at least 20 exceedances enter the regression; the
    fitted c8 is -1 / (2 * slope).
    """
    if n_paths < 1:
        raise InvalidInputError(f"n_paths must be positive, got {n_paths}")
    if bin_width < math.sqrt(dt) * (1 - 1e-12):
        raise InvalidInputError(
            f"bin_width {bin_width} is below the resolution sqrt(dt)={math.sqrt(dt)}"
        )
    sups, max_error = sup_samples(n_paths, dt, bin_width, seed, workers)

    median = float(np.median(sups))
    beyond = int(np.count_nonzero(sups > median))
    levels = np.unique(np.quantile(sups, np.linspace(0.5, 1.0, TAIL_LEVELS)))
    points = []
    for u in levels:
        exceed = int(np.count_nonzero(sups >= u))
        if exceed < TAIL_MIN_EXCEEDANCES:
            continue
        survival = exceed / n_paths
        points.append(
            {
                "u": float(u),
                "u_squared": float(u * u),
                "survival": survival,
                "log_survival": math.log(survival),
                "exceedances": exceed,
            }
        )

    slope = intercept = r_squared = c8 = math.nan
    if len(points) >= 3:
        fit = stats.linregress(
            [p["u_squared"] for p in points], [p["log_survival"] for p in points]
        )
        slope, intercept = float(fit.slope), float(fit.intercept)
        r_squared = float(fit.rvalue**2)
        c8 = -1.0 / (2.0 * slope) if slope < 0 else math.nan

    inconclusive = beyond < TAIL_MIN_BEYOND_MEDIAN or len(points) < 3
    if inconclusive:
        logger.warning(
            "Local time tail is inconclusive: %d samples beyond the median", beyond
        )
    return TailReport(
        n_paths=n_paths,
        slope=slope,
        intercept=intercept,
        r_squared=r_squared,
        c8=c8,
        points=points,
        min_sup=float(sups.min()),
        max_conservation_error=max_error,
        beyond_median=beyond,
        inconclusive=inconclusive,
    )
