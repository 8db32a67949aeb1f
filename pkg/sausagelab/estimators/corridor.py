# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Importance sampling of coverage through the corridor of balls."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from sausagelab.analytic.corridor import (
    TUNING_COVER,
    TUNING_THETA,
    CorridorSpec,
    corridor_centers,
    corridor_n,
    default_gamma,
)
from sausagelab.analytic.probabilities import gaussian_disk_prob
from sausagelab.constants import (
    CHUNK_SIZE,
    CORRIDOR_BATCH,
    CORRIDOR_MIN_ACCEPTANCE,
    STREAM_CORRIDOR,
    STREAM_TOY,
)
from sausagelab.estimators.coverage import default_dt
from sausagelab.exceptions import CorridorStallError, InvalidInputError
from sausagelab.paths.sample import PathSample, bridge_infill
from sausagelab.pool import map_ordered
from sausagelab.sausage.adaptive import (
    SausageParams,
    adaptive_cover,
    polyline_point_distance,
)
from sausagelab.sausage.geometry import covers_segment
from sausagelab.stats import Estimate, combined_stderr, proportion
from sausagelab.streams import StreamKey

logger = logging.getLogger(__name__)

COVER_GAMMA = 2.0
MAX_BATCH = 1 << 20


@dataclass(frozen=True, eq=False)
class CorridorRun:
    """
    One path drawn under the corridor proposal.

    ``log_weight`` is the sum of the log probabilities of landing in each
    ball, i.e. the likelihood ratio of the corridor event.
    """

    spec: CorridorSpec
    checkpoint_points: np.ndarray
    step_log_probs: np.ndarray
    log_weight: float
    fine_path: PathSample


def draw_in_disk(
    rng: np.random.Generator,
    origin: np.ndarray,
    center: np.ndarray,
    sigma: float,
    radius: float,
    count: int,
    acceptance: float,
) -> np.ndarray:
    """
    Draw ``count`` points of N(origin, sigma^2 I) conditioned on the disk.

    Raises:
        CorridorStallError: If the acceptance probability is below 1e-6
    """
    if acceptance < CORRIDOR_MIN_ACCEPTANCE:
        raise CorridorStallError(
            f"Acceptance {acceptance:.3g} from {origin} into disk at {center}",
            achieved_error=acceptance,
        )
    accepted: list[np.ndarray] = []
    found = 0
    batch = min(max(CORRIDOR_BATCH, math.ceil(2 * count / acceptance)), MAX_BATCH)
    while found < count:
        proposals = origin + sigma * rng.normal(size=(batch, 2))
        inside = proposals[np.hypot(*(proposals - center).T) <= radius]
        accepted.append(inside)
        found += inside.shape[0]
    return np.vstack(accepted)[:count]


def corridor_sample(
    epsilon: float,
    gamma: float,
    k_tune: float,
    dt_fine: float,
    stream: StreamKey,
    tuning: str = TUNING_THETA,
) -> CorridorRun:
    """
    Sample checkpoints ball by ball and fill in bridges between them.

    Checkpoints use ``stream.child(0)`` and the bridges ``stream.child(1)``,
    so the weight does not depend on ``dt_fine``.
    """
    if not 0 < epsilon < 0.5:
        raise InvalidInputError(f"epsilon must lie in (0, 1/2), got {epsilon}")
    n = corridor_n(epsilon, gamma, k_tune, tuning)
    spec = corridor_centers(n)
    sigma = radius = 1.0 / n
    centers = spec.center_points()

    rng = stream.child(0).generator()
    points = np.empty((spec.n_checkpoints, 2))
    log_probs = np.empty(spec.n_checkpoints)
    current = np.zeros(2)
    for j, center in enumerate(centers):
        distance = float(np.hypot(*(current - center)))
        p_j = gaussian_disk_prob(distance, sigma, radius)
        current = draw_in_disk(rng, current, center, sigma, radius, 1, p_j)[0]
        log_probs[j] = math.log(p_j)
        points[j] = current

    vertices = np.vstack([np.zeros(2), points])
    substeps = max(1, round(spec.checkpoint_dt / dt_fine))
    legs = bridge_infill(
        vertices[:-1],
        vertices[1:],
        np.full(spec.n_checkpoints, spec.checkpoint_dt),
        substeps,
        stream.child(1).generator(),
    )
    blocks = np.concatenate([vertices[:-1, None, :], legs], axis=1)
    fine = np.vstack([blocks.reshape(-1, 2), vertices[-1:]])
    return CorridorRun(
        spec=spec,
        checkpoint_points=points,
        step_log_probs=log_probs,
        log_weight=float(np.sum(log_probs)),
        fine_path=PathSample(spec.checkpoint_dt / substeps, fine, str(stream)),
    )


def grid_points(epsilon: float) -> np.ndarray:
    """z_j = (j eps, 0) for j = 1..ceil(1/eps)."""
    b = math.ceil(1.0 / epsilon)
    return np.column_stack([np.arange(1, b + 1) * epsilon, np.zeros(b)])


def weighted_log_mean(
    log_weights: np.ndarray, indicator: np.ndarray
) -> Estimate | None:
    """
    Log of mean(w * 1_A) with a delta-method error, or None without successes.
    """
    n = log_weights.size
    if not indicator.any():
        return None
    log_mean = float(logsumexp(log_weights, b=indicator.astype(float))) - math.log(n)
    shift = log_weights[indicator].max()
    scaled = np.exp(np.where(indicator, log_weights - shift, -np.inf))
    mean = scaled.mean()
    stderr = float(np.std(scaled, ddof=1) / math.sqrt(n) / mean) if n > 1 else 0.0
    return Estimate(mean=log_mean, stderr=stderr, n=n, log_domain=True)


def _linear(log_estimate: Estimate | None, n: int) -> Estimate:
    if log_estimate is None:
        return Estimate(mean=0.0, stderr=0.0, n=n)
    mean = math.exp(log_estimate.mean)
    return Estimate(mean=mean, stderr=mean * log_estimate.stderr, n=n)


@dataclass(frozen=True)
class LowerBoundResult:
    """Importance-sampling estimates of P[target and H_N] for both targets."""

    n: int
    n_balls_param: int
    gamma: float
    k_tune: float
    tuning: str
    theta_log: Estimate | None
    cover_log: Estimate | None
    theta_linear: Estimate
    cover_linear: Estimate
    log_p_corridor: Estimate
    conditional_theta_fraction: Estimate
    conditional_cover_fraction: Estimate
    discrete_theta_fraction: Estimate
    discrete_cover_fraction: Estimate
    conditional_miss_rate: float
    mean_xi: float
    theta_upper_log: float | None
    cover_upper_log: float | None
    budget_limited: int

    @property
    def no_successes(self) -> bool:
        return self.theta_log is None

    def summary(self) -> dict:
        def log_part(e: Estimate | None) -> dict:
            if e is None:
                return {"mean": None, "stderr": None}
            return {"mean": e.mean, "stderr": e.stderr}

        return {
            "n": self.n,
            "N": self.n_balls_param,
            "gamma": self.gamma,
            "k_tune": self.k_tune,
            "tuning": self.tuning,
            "log_theta": log_part(self.theta_log),
            "log_cover": log_part(self.cover_log),
            "theta": self.theta_linear.to_dict(),
            "cover": self.cover_linear.to_dict(),
            "log_p_corridor": log_part(self.log_p_corridor),
            "conditional_theta_fraction": self.conditional_theta_fraction.mean,
            "conditional_cover_fraction": self.conditional_cover_fraction.mean,
            "discrete_theta_fraction": self.discrete_theta_fraction.mean,
            "discrete_cover_fraction": self.discrete_cover_fraction.mean,
            "conditional_miss_rate": self.conditional_miss_rate,
            "mean_xi": self.mean_xi,
            "theta_upper_log": self.theta_upper_log,
            "cover_upper_log": self.cover_upper_log,
            "no_successes": self.no_successes,
            "budget_limited": self.budget_limited,
        }


def is_lower_bound(
    params: SausageParams,
    gamma: float | None = None,
    k_tune: float = 1.0,
    n: int = 1000,
    dt_fine: float | None = None,
    seed: int = 0,
    workers: int = 1,
    tuning: str = TUNING_THETA,
) -> LowerBoundResult:
    """
    Stochastic lower bounds for P[Xi >= theta] and P[full coverage].

    Each corridor path is scored with its exact coverage and with the
    discrete criterion on the points z_j: fewer than (1 - theta)b - 1 of
    z_1..z_{b-1} outside the epsilon/2 sausage, or none of z_1..z_b outside
    it for full coverage.
    """
    eps, theta = params.epsilon, params.theta
    if gamma is None:
        gamma = COVER_GAMMA if tuning == TUNING_COVER else default_gamma(theta)
    dt_fine = default_dt(eps) if dt_fine is None else dt_fine
    if n < 1:
        raise InvalidInputError(f"n must be positive, got {n}")
    grid = grid_points(eps)
    b = grid.shape[0]

    def run(chunk: range) -> np.ndarray:
        out = np.empty((len(chunk), 8))
        for pos, i in enumerate(chunk):
            key = StreamKey(seed, (STREAM_CORRIDOR, i))
            sample = corridor_sample(eps, gamma, k_tune, dt_fine, key, tuning)
            cover = adaptive_cover(sample.fine_path, params, key.child(2))
            xi = cover.union.measure()
            points = sample.fine_path.points
            outside = np.array(
                [polyline_point_distance(points, z) > eps / 2.0 for z in grid]
            )
            misses = int(np.count_nonzero(outside[: b - 1]))
            out[pos] = (
                sample.log_weight,
                xi,
                xi >= theta,
                covers_segment(cover.union, 0.0),
                misses < (1.0 - theta) * b - 1.0,
                not outside.any(),
                misses,
                cover.budget_limited,
            )
        return out

    chunks = [range(lo, min(lo + CHUNK_SIZE, n)) for lo in range(0, n, CHUNK_SIZE)]
    table = np.vstack(map_ordered(run, chunks, workers))
    log_w = table[:, 0]
    theta_hit = table[:, 2].astype(bool)
    cover_hit = table[:, 3].astype(bool)
    misses = table[:, 6]
    budget_limited = int(np.count_nonzero(table[:, 7]))
    n_balls = corridor_n(eps, gamma, k_tune, tuning)
    record = str(StreamKey(seed, (STREAM_CORRIDOR,)))

    theta_log = weighted_log_mean(log_w, theta_hit)
    cover_log = weighted_log_mean(log_w, cover_hit)
    max_log_w = float(log_w.max())
    # Rule of three: with no hit among n draws the hit rate is below 3/n at 95%.
    upper = max_log_w + math.log(3.0 / n)
    if theta_log is None:
        logger.warning("No corridor path reached theta=%s at epsilon=%s", theta, eps)

    return LowerBoundResult(
        n=n,
        n_balls_param=n_balls,
        gamma=gamma,
        k_tune=k_tune,
        tuning=tuning,
        theta_log=theta_log,
        cover_log=cover_log,
        theta_linear=_linear(theta_log, n),
        cover_linear=_linear(cover_log, n),
        log_p_corridor=weighted_log_mean(log_w, np.ones(n, dtype=bool)),
        conditional_theta_fraction=proportion(theta_hit, record),
        conditional_cover_fraction=proportion(cover_hit, record),
        discrete_theta_fraction=proportion(table[:, 4].astype(bool), record),
        discrete_cover_fraction=proportion(table[:, 5].astype(bool), record),
        conditional_miss_rate=float(np.mean(misses) / max(b - 1, 1)),
        mean_xi=float(np.mean(table[:, 1])),
        theta_upper_log=upper if theta_log is None else None,
        cover_upper_log=upper if cover_log is None else None,
        budget_limited=budget_limited,
    )


@dataclass(frozen=True)
class OneStepReport:
    """Importance-sampled versus direct probability of one toy event."""

    n_balls_param: int
    p_first_ball: float
    weighted: Estimate
    direct: Estimate

    @property
    def agrees(self) -> bool:
        gap = abs(self.weighted.mean - self.direct.mean)
        return gap <= 4.0 * combined_stderr(self.weighted.stderr, self.direct.stderr)

    def rows(self) -> list[dict]:
        return [
            {
                "N": self.n_balls_param,
                "p_first_ball": self.p_first_ball,
                "weighted": self.weighted.mean,
                "weighted_stderr": self.weighted.stderr,
                "direct": self.direct.mean,
                "direct_stderr": self.direct.stderr,
                "flag": "ok" if self.agrees else "mismatch",
            }
        ]


def one_step_weight_check(n_balls: int, n: int, seed: int) -> OneStepReport:
    """
    Validate the one-step weight on the event {B lands in C_1, right of its center}.

    The weighted estimate is p_1 times the fraction of conditioned draws to
    the right of the center; the direct estimate counts unconditioned draws.
    """
    spec = corridor_centers(n_balls)
    sigma = radius = spec.radius
    center = spec.center_points()[0]
    origin = np.zeros(2)
    p1 = gaussian_disk_prob(float(np.hypot(*center)), sigma, radius)
    record = str(StreamKey(seed, (STREAM_TOY,)))

    rng = StreamKey(seed, (STREAM_TOY, 0)).generator()
    conditioned = draw_in_disk(rng, origin, center, sigma, radius, n, p1)
    right = proportion(conditioned[:, 0] > center[0], record, wilson=False)
    weighted = Estimate(
        mean=p1 * right.mean, stderr=p1 * right.stderr, n=n, seed_record=record
    )

    draws = sigma * StreamKey(seed, (STREAM_TOY, 1)).generator().normal(size=(n, 2))
    event = (np.hypot(*(draws - center).T) <= radius) & (draws[:, 0] > center[0])
    direct = proportion(event, record, wilson=False)
    return OneStepReport(n_balls, p1, weighted, direct)
