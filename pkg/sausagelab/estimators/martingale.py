# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Tracking the coverage martingale along stopped paths."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from sausagelab.analytic.bounds import azuma_tail_bound, qv_budget
from sausagelab.constants import STREAM_MARTINGALE
from sausagelab.exceptions import InvalidInputError
from sausagelab.paths.sample import PathSample, first_exit_index, sample_path
from sausagelab.pool import map_ordered
from sausagelab.sausage.geometry import cover_intervals
from sausagelab.stats import Estimate, sample_mean
from sausagelab.streams import StreamKey
from sausagelab.wos.walk import WosConfig, wos_estimate

logger = logging.getLogger(__name__)

DEFAULT_CHECKPOINTS = 50
MIN_ABS_Y = 1e-12


def alpha_midpoints(alpha_step: float) -> tuple[np.ndarray, float]:
    """Midpoints of a partition of [0, 1] into cells no wider than ``alpha_step``."""
    cells = math.ceil(1.0 / alpha_step - 1e-12)
    width = 1.0 / cells
    return (np.arange(cells) + 0.5) * width, width


@dataclass(frozen=True, eq=False)
class MartingaleTrack:
    """Estimated martingale values at checkpoint times of one path."""

    indices: np.ndarray
    times: np.ndarray
    y: np.ndarray
    values: np.ndarray
    stderrs: np.ndarray
    frozen: np.ndarray
    skipped: np.ndarray
    tau_index: int | None

    def increments(self) -> list[dict]:
        """Increments between consecutive usable checkpoints."""
        usable = np.flatnonzero(~self.skipped)
        out = []
        for a, b in zip(usable[:-1], usable[1:]):
            out.append(
                {
                    "delta_m": float(self.values[b] - self.values[a]),
                    "delta_t": float(self.times[b] - self.times[a]),
                    "y": float(self.y[a]),
                    "frozen": bool(self.frozen[a] and self.frozen[b]),
                }
            )
        return out


def martingale_track(
    path: PathSample,
    epsilon: float,
    alpha_step: float,
    wos_cfg: WosConfig,
    stream: StreamKey,
    n_checkpoints: int = DEFAULT_CHECKPOINTS,
) -> MartingaleTrack:
    """
    Estimate M_t = m(A_t) + sum over uncovered alpha of f(B_t, alpha) d_alpha.

    A_t is the covered part of [0, 1] up to t stopped at the strip exit. From
    the exit on, M is frozen at m(A_tau). Checkpoints whose walks hit the
    step budget are skipped.
    """
    if not 0 < alpha_step <= epsilon:
        raise InvalidInputError(
            f"alpha_step must lie in (0, epsilon], got {alpha_step}"
        )
    if not math.isclose(wos_cfg.epsilon, epsilon):
        raise InvalidInputError("Walk-on-spheres epsilon must match the sausage radius")
    alphas, width = alpha_midpoints(alpha_step)
    tau = first_exit_index(path, 1.0)
    indices = np.unique(np.round(np.linspace(0, len(path) - 1, n_checkpoints + 1)))
    indices = indices.astype(np.int64)

    values = np.empty(indices.size)
    stderrs = np.zeros(indices.size)
    frozen = np.zeros(indices.size, dtype=bool)
    skipped = np.zeros(indices.size, dtype=bool)
    frozen_value = None
    for c, index in enumerate(indices):
        if tau is not None and index >= tau:
            if frozen_value is None:
                frozen_value = cover_intervals(path, epsilon, stop_index=tau).measure()
            values[c] = frozen_value
            frozen[c] = True
            continue
        union = cover_intervals(path, epsilon, stop_index=int(index))
        position = tuple(path.points[index])
        total, variance, truncated = union.measure(), 0.0, 0
        for k, alpha in enumerate(alphas):
            if union.contains_point(alpha):
                continue
            est = wos_estimate(position, float(alpha), wos_cfg, stream.child(c, k))
            total += est.mean * width
            variance += (est.stderr * width) ** 2
            truncated += est.details.get("truncated", 0)
        values[c] = total
        stderrs[c] = math.sqrt(variance)
        if truncated:
            skipped[c] = True
            logger.warning(
                "Checkpoint %d skipped: %d truncated walks", index, truncated
            )

    return MartingaleTrack(
        indices=indices,
        times=indices * path.dt,
        y=path.y[indices],
        values=values,
        stderrs=stderrs,
        frozen=frozen,
        skipped=skipped,
        tau_index=tau,
    )


def qv_ratio(delta_m: float, delta_t: float, y: float, epsilon: float) -> float:
    """Squared increment over ((1 + |log|y||)/|log eps|)^2 dt."""
    scale = (1.0 + abs(math.log(max(abs(y), MIN_ABS_Y)))) / abs(math.log(epsilon))
    return delta_m**2 / (scale**2 * delta_t)


@dataclass
class MartingaleReport:
    epsilon: float
    theta: float
    tracks: list[MartingaleTrack] = field(repr=False)
    mean_increment: Estimate | None
    c0: float
    ceiling_fraction: float
    m0: Estimate
    m0_scaled: float
    qv_limit: float
    qv_exceed_fraction: float
    azuma_bound: float

    def rows(self) -> list[dict]:
        rows = []
        for p, track in enumerate(self.tracks):
            for c in range(track.indices.size):
                rows.append(
                    {
                        "path": p,
                        "t": float(track.times[c]),
                        "y": float(track.y[c]),
                        "m": float(track.values[c]),
                        "m_stderr": float(track.stderrs[c]),
                        "frozen": bool(track.frozen[c]),
                        "flag": "skipped" if track.skipped[c] else "ok",
                    }
                )
        return rows

    def summary(self) -> dict:
        return {
            "mean_increment": self.mean_increment.to_dict()
            if self.mean_increment
            else None,
            "c0": self.c0,
            "ceiling_fraction": self.ceiling_fraction,
            "m0": self.m0.to_dict(),
            "m0_scaled": self.m0_scaled,
            "qv_limit": self.qv_limit,
            "qv_exceed_fraction": self.qv_exceed_fraction,
            "azuma_bound": self.azuma_bound,
            "skipped_checkpoints": int(sum(t.skipped.sum() for t in self.tracks)),
        }


def martingale_study(
    n_paths: int,
    epsilon: float,
    dt: float,
    alpha_step: float,
    wos_cfg: WosConfig,
    seed: int,
    theta: float = 0.5,
    n_checkpoints: int = DEFAULT_CHECKPOINTS,
    workers: int = 1,
) -> MartingaleReport:
    """
    Track many paths and test the martingale and quadratic variation claims.

    c0 is the largest ratio of squared increment to the ceiling shape on
    even-numbered paths; ``ceiling_fraction`` is the share of odd-numbered
    path increments below that fitted ceiling.
    """
    if n_paths < 1:
        raise InvalidInputError(f"n_paths must be positive, got {n_paths}")

    def run(i: int) -> MartingaleTrack:
        key = StreamKey(seed, (STREAM_MARTINGALE, i))
        path = sample_path(dt, 1.0, key.child(0))
        return martingale_track(
            path, epsilon, alpha_step, wos_cfg, key.child(1), n_checkpoints
        )

    tracks = map_ordered(run, range(n_paths), workers)
    record = str(StreamKey(seed, (STREAM_MARTINGALE,)))

    deltas, fit_ratios, check_ratios, qv = [], [], [], []
    for p, track in enumerate(tracks):
        path_qv = 0.0
        for inc in track.increments():
            deltas.append(inc["delta_m"])
            path_qv += inc["delta_m"] ** 2
            if inc["frozen"] or inc["delta_t"] <= 0:
                continue
            ratio = qv_ratio(inc["delta_m"], inc["delta_t"], inc["y"], epsilon)
            (fit_ratios if p % 2 == 0 else check_ratios).append(ratio)
        qv.append(path_qv)

    mean_increment = sample_mean(np.array(deltas), record) if deltas else None
    c0 = max(fit_ratios) if fit_ratios else math.nan
    ceiling_fraction = (
        float(np.mean(np.array(check_ratios) <= c0)) if check_ratios else math.nan
    )
    m0 = sample_mean(np.array([t.values[0] for t in tracks]), record)

    qv_limit = azuma = exceed = math.nan
    if math.isfinite(c0) and c0 > 0:
        qv_limit = qv_budget(epsilon, c0)
        exceed = float(np.mean(np.array(qv) > qv_limit))
        azuma = azuma_tail_bound(theta, m0.mean, qv_limit, exceed)

    return MartingaleReport(
        epsilon=epsilon,
        theta=theta,
        tracks=tracks,
        mean_increment=mean_increment,
        c0=c0,
        ceiling_fraction=ceiling_fraction,
        m0=m0,
        m0_scaled=m0.mean * abs(math.log(epsilon)),
        qv_limit=qv_limit,
        qv_exceed_fraction=exceed,
        azuma_bound=azuma,
    )
