# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Direct Monte Carlo of sausage coverage and the strip-conditioning check."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from sausagelab.constants import (
    CHUNK_SIZE,
    STREAM_NAIVE,
    STREAM_REFINE,
    STREAM_STRIP,
    STRIP_MIN_CONDITIONED,
    XI_HISTOGRAM_BINS,
)
from sausagelab.exceptions import InvalidInputError
from sausagelab.paths.sample import first_exit_index, sample_path
from sausagelab.pool import map_ordered
from sausagelab.sausage.adaptive import SausageParams, adaptive_cover
from sausagelab.sausage.geometry import covers_segment
from sausagelab.stats import Estimate, proportion
from sausagelab.streams import StreamKey

logger = logging.getLogger(__name__)


def default_dt(epsilon: float) -> float:
    """(epsilon/4)^2, so a typical step moves about epsilon/2; capped at 1."""
    return min((epsilon / 4.0) ** 2, 1.0)


@dataclass(frozen=True, eq=False)
class CoverageSamples:
    """Per-path outcomes of a batch of unit-duration paths."""

    xi: np.ndarray
    covered: np.ndarray
    stayed_in_strip: np.ndarray
    budget_limited: int


def coverage_samples(
    params: SausageParams,
    n: int,
    dt: float,
    seed: int,
    workers: int = 1,
    tag: int = STREAM_NAIVE,
) -> CoverageSamples:
    """
    Sample ``n`` paths of duration 1 and measure their coverage.

    Path i draws from StreamKey(seed, (tag, i)), so any two calls with the
    same seed and tag see the same paths whatever the worker count.
    """
    if n < 1:
        raise InvalidInputError(f"n must be positive, got {n}")

    def run(chunk: range) -> tuple[np.ndarray, ...]:
        xi = np.empty(len(chunk))
        covered = np.empty(len(chunk), dtype=bool)
        stayed = np.empty(len(chunk), dtype=bool)
        limited = 0
        for pos, i in enumerate(chunk):
            path = sample_path(dt, 1.0, StreamKey(seed, (tag, i)))
            refine_key = StreamKey(seed, (STREAM_REFINE, tag, i))
            result = adaptive_cover(path, params, refine_key)
            xi[pos] = result.union.measure()
            covered[pos] = covers_segment(result.union, 0.0)
            stayed[pos] = first_exit_index(path, 1.0) is None
            limited += int(result.budget_limited)
        return xi, covered, stayed, np.array([limited])

    chunks = [range(lo, min(lo + CHUNK_SIZE, n)) for lo in range(0, n, CHUNK_SIZE)]
    parts = map_ordered(run, chunks, workers)
    samples = CoverageSamples(
        xi=np.concatenate([p[0] for p in parts]),
        covered=np.concatenate([p[1] for p in parts]),
        stayed_in_strip=np.concatenate([p[2] for p in parts]),
        budget_limited=int(sum(p[3][0] for p in parts)),
    )
    if samples.budget_limited:
        logger.warning(
            "%d of %d paths hit the refinement budget", samples.budget_limited, n
        )
    return samples


def xi_summary(xi: np.ndarray) -> dict:
    counts, edges = np.histogram(xi, bins=XI_HISTOGRAM_BINS, range=(0.0, 1.0))
    q10, q50, q90 = np.quantile(xi, [0.1, 0.5, 0.9])
    return {
        "mean": float(np.mean(xi)),
        "q10": float(q10),
        "median": float(q50),
        "q90": float(q90),
        "histogram": [int(c) for c in counts],
        "bin_edges": [float(e) for e in edges],
    }


@dataclass(frozen=True, eq=False)
class NaiveResult:
    p_cover: Estimate
    p_theta: Estimate
    xi_summary: dict
    xi: np.ndarray = field(repr=False)
    dt: float = 0.0
    budget_limited: int = 0


def naive_mc(
    params: SausageParams,
    n: int,
    dt: float | None = None,
    seed: int = 0,
    workers: int = 1,
) -> NaiveResult:
    """
    Empirical P[full coverage] and P[Xi >= theta] with Wilson errors.

    Without ``dt`` the grid follows ``default_dt(epsilon)``, so runs at
    different epsilons sample different paths even under one seed. Pass
    an explicit ``dt`` to compare epsilons on a shared set of paths, where
    the estimates are ordered the same way as the true probabilities.
    """
    dt = default_dt(params.epsilon) if dt is None else dt
    samples = coverage_samples(params, n, dt, seed, workers)
    record = str(StreamKey(seed, (STREAM_NAIVE,)))
    return NaiveResult(
        p_cover=proportion(samples.covered, record),
        p_theta=proportion(samples.xi >= params.theta, record),
        xi_summary=xi_summary(samples.xi),
        xi=samples.xi,
        dt=dt,
        budget_limited=samples.budget_limited,
    )


@dataclass(frozen=True)
class StripReport:
    """P[G2 | G1] - P[G2] for G1 = {no strip exit by time 1}, G2 = {Xi >= theta}."""

    p_g2: Estimate
    p_g2_given_g1: Estimate | None
    p_g2_given_not_g1: Estimate | None
    n_g1: int
    difference: float
    difference_stderr: float
    inconclusive: bool

    @property
    def holds(self) -> bool:
        return self.difference >= -3.0 * self.difference_stderr - 1e-15

    def rows(self) -> list[dict]:
        def mean(e: Estimate | None) -> float:
            return e.mean if e is not None else math.nan

        def err(e: Estimate | None) -> float:
            return e.stderr if e is not None else math.nan

        return [
            {
                "p_g2": self.p_g2.mean,
                "p_g2_stderr": self.p_g2.stderr,
                "p_g2_given_g1": mean(self.p_g2_given_g1),
                "p_g2_given_g1_stderr": err(self.p_g2_given_g1),
                "p_g2_given_not_g1": mean(self.p_g2_given_not_g1),
                "p_g2_given_not_g1_stderr": err(self.p_g2_given_not_g1),
                "n_g1": self.n_g1,
                "difference": self.difference,
                "difference_stderr": self.difference_stderr,
                "flag": "inconclusive"
                if self.inconclusive
                else ("ok" if self.holds else "violated"),
            }
        ]


def strip_conditioning_check(
    params: SausageParams,
    n: int,
    dt: float | None = None,
    seed: int = 0,
    workers: int = 1,
) -> StripReport:
    """
    Compare the coverage event with and without conditioning on staying in the strip.

    The difference D = P[G2|G1] - P[G2] equals (1 - q)(p1 - p0) with q = P[G1];
    its error combines both conditional proportions and q.
    """
    dt = default_dt(params.epsilon) if dt is None else dt
    samples = coverage_samples(params, n, dt, seed, workers, tag=STREAM_STRIP)
    g2 = samples.xi >= params.theta
    g1 = samples.stayed_in_strip
    record = str(StreamKey(seed, (STREAM_STRIP,)))

    p_all = proportion(g2, record)
    n_g1 = int(np.count_nonzero(g1))
    given = proportion(g2[g1], record) if n_g1 else None
    given_not = proportion(g2[~g1], record) if n_g1 < n else None

    q = n_g1 / n
    if given is None:
        difference, stderr = math.nan, math.inf
    elif given_not is None:
        difference, stderr = given.mean - p_all.mean, 0.0
    else:
        p1, p0 = given.mean, given_not.mean
        difference = given.mean - p_all.mean
        stderr = math.sqrt(
            (1 - q) ** 2 * (given.stderr**2 + given_not.stderr**2)
            + (p1 - p0) ** 2 * q * (1 - q) / n
        )

    inconclusive = n_g1 < STRIP_MIN_CONDITIONED
    if inconclusive:
        logger.warning(
            "Only %d of %d paths stayed in the strip; check is inconclusive", n_g1, n
        )
    return StripReport(
        p_g2=p_all,
        p_g2_given_g1=given,
        p_g2_given_not_g1=given_not,
        n_g1=n_g1,
        difference=difference,
        difference_stderr=stderr,
        inconclusive=inconclusive,
    )
