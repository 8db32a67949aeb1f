# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Numerical checks of the strip hitting function built on walk on spheres."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy import stats

from sausagelab.analytic.probabilities import annulus_hit_prob
from sausagelab.constants import INCONCLUSIVE_RELATIVE_ERROR, STOP_SHELL_FRACTION
from sausagelab.exceptions import InvalidInputError
from sausagelab.pool import map_ordered
from sausagelab.stats import Estimate, sample_mean
from sausagelab.streams import StreamKey
from sausagelab.wos.fd import FdGrid
from sausagelab.wos.walk import WosConfig, wos_estimate, wos_outcomes

logger = logging.getLogger(__name__)

DEFAULT_Y_GRID = tuple(round(0.1 * k, 10) for k in range(1, 10))
DEFAULT_ALPHA_GRID = tuple(0.5 * k for k in range(1, 9))


@dataclass(frozen=True)
class AlphaGrid:
    """Equally spaced alpha values on [0, alpha_max] with trapezoid weights."""

    step: float
    alpha_max: float

    def __post_init__(self):
        if self.step <= 0 or self.alpha_max <= 0:
            raise InvalidInputError("alpha grid step and extent must be positive")

    def points(self) -> np.ndarray:
        count = max(1, round(self.alpha_max / self.step))
        return np.arange(count + 1) * (self.alpha_max / count)

    def weights(self) -> np.ndarray:
        alphas = self.points()
        weights = np.full(alphas.size, alphas[1] - alphas[0])
        weights[[0, -1]] /= 2.0
        return weights


def _for_epsilon(cfg: WosConfig, epsilon: float) -> WosConfig:
    if math.isclose(cfg.epsilon, epsilon):
        return cfg
    return replace(cfg, epsilon=epsilon, stop_shell=epsilon * STOP_SHELL_FRACTION)


def g_samples(
    y: float,
    cfg: WosConfig,
    grid: AlphaGrid,
    stream: StreamKey,
    workers: int = 1,
) -> tuple[np.ndarray, float, int]:
    """
    Per-walk samples of the alpha integral of f((0, y), alpha).

    Sample i combines walk i of every alpha; alpha k always draws from
    ``stream.child(k)``, so calls at different y share random numbers.

    Returns:
        (samples, estimate of f at alpha_max, truncated walk count)
    """
    if abs(y) >= 1:
        raise InvalidInputError(f"|y| must be below 1, got {y}")
    if grid.alpha_max > cfg.x_cutoff:
        raise InvalidInputError("alpha grid extends beyond the x cutoff")
    alphas = grid.points()

    def run(k: int) -> tuple[np.ndarray, int]:
        rng = stream.child(k).generator()
        return wos_outcomes((0.0, y), float(alphas[k]), cfg, rng)

    outcomes = map_ordered(run, range(alphas.size), workers)
    hits = np.stack([o[0] for o in outcomes]).astype(float)
    truncated = sum(o[1] for o in outcomes)
    # f is even in alpha, so the full-line integral doubles the half-line one.
    samples = 2.0 * grid.weights() @ hits
    return samples, float(hits[-1].mean()), truncated


def g_of_y(
    y: float,
    epsilon: float,
    cfg: WosConfig,
    alpha_grid: AlphaGrid,
    stream: StreamKey,
    workers: int = 1,
) -> Estimate:
    """
    Estimate g(y), the integral of f((0, y), alpha) over the real line.

    The mass beyond alpha_max is bounded by 2 f(alpha_max) using the
    e^-alpha decay of f and reported as ``tail_bias_bound``.
    """
    cfg = _for_epsilon(cfg, epsilon)
    samples, f_edge, truncated = g_samples(y, cfg, alpha_grid, stream, workers)
    estimate = sample_mean(samples, str(stream))
    return replace(
        estimate,
        details={"tail_bias_bound": 2.0 * f_edge, "truncated": truncated},
    )


@dataclass(frozen=True)
class Eq9Report:
    """Comparison of -g'(y) against g(y)/(1 - |y|)."""

    y: float
    epsilon: float
    dy: float
    lhs: Estimate
    rhs: Estimate
    difference: Estimate
    ratio: float
    ratio_stderr: float
    c7: float
    inconclusive: bool
    consistent: bool

    def rows(self) -> list[dict]:
        return [
            {
                "y": self.y,
                "epsilon": self.epsilon,
                "dy": self.dy,
                "lhs": self.lhs.mean,
                "lhs_stderr": self.lhs.stderr,
                "rhs": self.rhs.mean,
                "rhs_stderr": self.rhs.stderr,
                "ratio": self.ratio,
                "ratio_stderr": self.ratio_stderr,
                "c7": self.c7,
                "flag": "inconclusive" if self.inconclusive else (
                    "ok" if self.consistent else "mismatch"
                ),
            }
        ]


def eq9_identity_check(
    y: float,
    epsilon: float,
    dy: float,
    cfg: WosConfig,
    alpha_grid: AlphaGrid,
    stream: StreamKey,
    workers: int = 1,
) -> Eq9Report:
    """
    Check the first-order identity -d/dy g(y) = g(y)/(1 - y) for 0 < y < 1.

    For negative y the derivative changes sign. The three g values use common
    random numbers and the error of the difference is taken per walk.
    """
    if not 0 < abs(y) < 1:
        raise InvalidInputError(f"y must satisfy 0 < |y| < 1, got {y}")
    if not 0 < dy < (1 - abs(y)) / 4:
        raise InvalidInputError(f"dy must lie in (0, (1-|y|)/4), got {dy}")
    cfg = _for_epsilon(cfg, epsilon)

    below, _, _ = g_samples(y - dy, cfg, alpha_grid, stream, workers)
    centre, _, _ = g_samples(y, cfg, alpha_grid, stream, workers)
    above, _, _ = g_samples(y + dy, cfg, alpha_grid, stream, workers)

    sign = 1.0 if y > 0 else -1.0
    lhs_samples = sign * (below - above) / (2.0 * dy)
    rhs_samples = centre / (1.0 - abs(y))
    lhs = sample_mean(lhs_samples, str(stream))
    rhs = sample_mean(rhs_samples, str(stream))
    difference = sample_mean(lhs_samples - rhs_samples, str(stream))

    if rhs.mean > 0 and lhs.mean != 0:
        ratio = lhs.mean / rhs.mean
        ratio_stderr = abs(ratio) * math.hypot(
            lhs.stderr / lhs.mean, rhs.stderr / rhs.mean
        )
    else:
        ratio, ratio_stderr = math.nan, math.inf

    inconclusive = rhs.mean <= 0 or (
        difference.stderr > INCONCLUSIVE_RELATIVE_ERROR * rhs.mean
    )
    if inconclusive:
        logger.warning(
            "Identity check at y=%s eps=%s is inconclusive (stderr %.3g)",
            y,
            epsilon,
            difference.stderr,
        )
    return Eq9Report(
        y=y,
        epsilon=epsilon,
        dy=dy,
        lhs=lhs,
        rhs=rhs,
        difference=difference,
        ratio=ratio,
        ratio_stderr=ratio_stderr,
        c7=rhs.mean * abs(math.log(epsilon)),
        inconclusive=inconclusive,
        consistent=abs(difference.mean) <= 3.0 * difference.stderr,
    )


@dataclass
class Lemma4Report:
    """Shape checks of f along the y and alpha axes for several epsilons."""

    rows_: list[dict] = field(default_factory=list)
    per_epsilon: dict[float, dict] = field(default_factory=dict)
    c5_stability: float = math.nan
    c6_stability: float = math.nan

    def rows(self) -> list[dict]:
        return list(self.rows_)

    @property
    def c5_stable(self) -> bool:
        return self.c5_stability <= 2.0

    @property
    def inconclusive_points(self) -> int:
        return sum(1 for row in self.rows_ if row["flag"] == "inconclusive")


def _monotone(values: list[Estimate], sigmas: float = 3.0) -> list[int]:
    """Indices k where values[k] < values[k+1] beyond ``sigmas`` combined errors."""
    bad = []
    for k in range(len(values) - 1):
        a, b = values[k], values[k + 1]
        if a.mean < b.mean - sigmas * math.hypot(a.stderr, b.stderr):
            bad.append(k)
    return bad


def _stability(values: list[float]) -> float:
    finite = [v for v in values if math.isfinite(v) and v > 0]
    if len(finite) < 2:
        return math.nan
    return max(finite) / min(finite)


def lemma4_shape_checks(
    epsilon_list: list[float],
    cfg: WosConfig,
    stream: StreamKey,
    y_grid: tuple[float, ...] = DEFAULT_Y_GRID,
    alpha_grid: tuple[float, ...] = DEFAULT_ALPHA_GRID,
    workers: int = 1,
) -> Lemma4Report:
    """
    Scaled sups of f along both axes, monotonicity and decay rate.

    Along y the scaled value is f((0,y),0)|log eps|/|log y| (its sup is the
    fitted c5); along alpha it is
    f((alpha,0),0)|log eps| e^alpha / (1 + max(0, log 1/alpha)) (fitted c6).
    """
    for eps in epsilon_list:
        if not 0 < eps < 0.25:
            raise InvalidInputError(f"Shape checks need epsilon < 1/4, got {eps}")
    if any(not 0 < y < 1 for y in y_grid) or any(a <= 0 for a in alpha_grid):
        raise InvalidInputError("y grid must lie in (0, 1) and alpha grid be positive")

    tasks = []
    for e, eps in enumerate(epsilon_list):
        for k, y in enumerate(y_grid):
            tasks.append((e, "y", k, (0.0, y)))
        for k, alpha in enumerate(alpha_grid):
            tasks.append((e, "alpha", k, (alpha, 0.0)))

    def run(task):
        e, axis, k, start = task
        cfg_e = _for_epsilon(cfg, epsilon_list[e])
        axis_tag = 0 if axis == "y" else 1
        return wos_estimate(start, 0.0, cfg_e, stream.child(e, axis_tag, k))

    estimates = map_ordered(run, tasks, workers)

    report = Lemma4Report()
    for e, eps in enumerate(epsilon_list):
        log_eps = abs(math.log(eps))
        along_y, along_alpha = [], []
        for (te, axis, k, start), est in zip(tasks, estimates):
            if te != e:
                continue
            if axis == "y":
                coord = start[1]
                scaled = est.mean * log_eps / abs(math.log(coord))
                along_y.append(est)
            else:
                coord = start[0]
                scaled = (
                    est.mean
                    * log_eps
                    * math.exp(coord)
                    / (1.0 + max(0.0, math.log(1.0 / coord)))
                )
                along_alpha.append(est)
            inconclusive = est.mean == 0 or (
                est.stderr > INCONCLUSIVE_RELATIVE_ERROR * est.mean
            )
            report.rows_.append(
                {
                    "epsilon": eps,
                    "axis": axis,
                    "coord": coord,
                    "f": est.mean,
                    "stderr": est.stderr,
                    "scaled": scaled,
                    "flag": "inconclusive" if inconclusive else "ok",
                }
            )

        cfg_e = _for_epsilon(cfg, eps)
        boundary = wos_estimate((0.0, 1.0), 0.0, cfg_e, stream.child(e, 2))
        positive = [
            (a, est.mean) for a, est in zip(alpha_grid, along_alpha) if est.mean > 0
        ]
        decay_slope = math.nan
        if len(positive) >= 3:
            fit = stats.linregress(
                [a for a, _ in positive], [math.log(v) for _, v in positive]
            )
            decay_slope = float(fit.slope)
        own = [r for r in report.rows_ if r["epsilon"] == eps]
        y_rows = [r for r in own if r["axis"] == "y"]
        a_rows = [r for r in own if r["axis"] == "alpha"]
        report.per_epsilon[eps] = {
            "c5": max(r["scaled"] for r in y_rows),
            "c6": max(r["scaled"] for r in a_rows),
            "monotone_y_violations": _monotone(along_y),
            "monotone_alpha_violations": _monotone(along_alpha),
            "decay_slope": decay_slope,
            "boundary_value": boundary.mean,
        }

    report.c5_stability = _stability([v["c5"] for v in report.per_epsilon.values()])
    report.c6_stability = _stability([v["c6"] for v in report.per_epsilon.values()])
    if report.inconclusive_points:
        logger.warning(
            "%d shape-check points are statistically inconclusive",
            report.inconclusive_points,
        )
    return report


def annulus_sandwich(
    start: tuple[float, float], alpha: float, cfg: WosConfig
) -> tuple[float, float] | None:
    """
    Annulus bounds on f for starts within distance 1 of the ball center.

    The unit disk around the center lies in the strip and the cut strip lies
    in the disk of radius sqrt(x_cutoff^2 + 1).
    """
    r = math.hypot(start[0] - alpha, start[1])
    if not cfg.epsilon <= r <= 1.0:
        return None
    outer = math.hypot(cfg.x_cutoff, 1.0)
    return (
        annulus_hit_prob(r, cfg.epsilon, 1.0),
        annulus_hit_prob(r, cfg.epsilon, outer),
    )


def wos_fd_agreement(
    cfg: WosConfig,
    fd: FdGrid,
    starts: list[tuple[float, float]],
    stream: StreamKey,
    workers: int = 1,
) -> list[dict]:
    """Compare walk-on-spheres estimates with the FD oracle and annulus bounds."""

    def run(k: int) -> Estimate:
        return wos_estimate(starts[k], 0.0, cfg, stream.child(k))

    estimates = map_ordered(run, range(len(starts)), workers)
    rows = []
    for (x, y), est in zip(starts, estimates):
        oracle = fd.value_at(x, y)
        tolerance = 4.0 * max(est.stderr, 1.0 / est.n)
        bounds = annulus_sandwich((x, y), 0.0, cfg)
        if bounds is None:
            lower = upper = math.nan
            sandwiched = True
        else:
            lower, upper = bounds
            slack = 3.0 * max(est.stderr, 1.0 / est.n)
            sandwiched = (
                lower - slack <= est.mean <= upper + slack
                and lower - slack <= oracle <= upper + slack
            )
        agree = abs(est.mean - oracle) <= tolerance
        rows.append(
            {
                "x": x,
                "y": y,
                "wos": est.mean,
                "stderr": est.stderr,
                "fd": oracle,
                "annulus_lower": lower,
                "annulus_upper": upper,
                "truncated": est.details.get("truncated", 0),
                "flag": "ok" if agree and sandwiched else "mismatch",
            }
        )
    return rows
