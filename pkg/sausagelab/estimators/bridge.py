# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Small-ball hitting probabilities of Brownian bridges."""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass

import numpy as np

from sausagelab.constants import (
    CHUNK_SIZE,
    DEFAULT_DT_MIN,
    DEFAULT_MAX_SEGMENTS,
    STREAM_BRIDGE,
)
from sausagelab.exceptions import InvalidInputError
from sausagelab.paths.refinement import adaptive_refine
from sausagelab.paths.sample import BridgeSpec, sample_bridge
from sausagelab.pool import map_ordered
from sausagelab.sausage.adaptive import (
    boundary_margin,
    point_segment_distance,
    polyline_point_distance,
)
from sausagelab.stats import Estimate, proportion
from sausagelab.streams import StreamKey

logger = logging.getLogger(__name__)

DEFAULT_Q1 = (0.0, 0.0)
DEFAULT_Q2 = (1.5, 0.0)
DEFAULT_Q3 = (0.75, 1.0)
MAX_SEPARATION = 3.0


@dataclass(frozen=True)
class BridgeReport:
    deltas: tuple[float, ...]
    estimates: tuple[Estimate, ...]
    implied_inverse_k: float
    monotone: bool

    def rows(self) -> list[dict]:
        return [
            {
                "delta": delta,
                "p_hit": est.mean,
                "stderr": est.stderr,
                "scaled": est.mean * abs(math.log(delta)),
            }
            for delta, est in zip(self.deltas, self.estimates)
        ]


def bridge_hit_experiment(
    delta_list: list[float],
    n: int,
    seed: int,
    q1: tuple[float, float] = DEFAULT_Q1,
    q2: tuple[float, float] = DEFAULT_Q2,
    q3: tuple[float, float] = DEFAULT_Q3,
    dt: float | None = None,
    refine_margin: float = 1.0,
    workers: int = 1,
) -> BridgeReport:
    """
    Probability that a unit-time bridge from q1 to q2 enters the delta-ball at q3.

    Every delta is scored on the same bridges; segments whose distance to q3
    is within the refinement margin of delta are bisected first. The default
    grid is (min delta / 4)^2. The minimum
    of p(delta) |log delta| over the list is the implied 1/K.

    Raises:
        InvalidInputError: On delta >= 1/2, delta < 4 sqrt(dt) or points more
            than 3 apart
    """
    deltas = tuple(sorted(delta_list, reverse=True))
    if not deltas:
        raise InvalidInputError("delta_list must not be empty")
    if dt is None:
        dt = (deltas[-1] / 4.0) ** 2
    for delta in deltas:
        if not 0 < delta < 0.5:
            raise InvalidInputError(f"delta must lie in (0, 1/2), got {delta}")
        if delta < 4.0 * math.sqrt(dt):
            raise InvalidInputError(
                f"delta {delta} is below 4 sqrt(dt); discretization would dominate"
            )
    for a, b in itertools.combinations((q1, q2, q3), 2):
        if math.dist(a, b) > MAX_SEPARATION:
            raise InvalidInputError(f"Points {a} and {b} are more than 3 apart")

    target = np.asarray(q3, dtype=float)
    spec = BridgeSpec(tuple(q1), tuple(q2), 1.0)

    def run(chunk: range) -> np.ndarray:
        hits = np.zeros((len(chunk), len(deltas)), dtype=bool)
        for pos, i in enumerate(chunk):
            key = StreamKey(seed, (STREAM_BRIDGE, i))
            path = sample_bridge(spec, dt, key)
            for k, delta in enumerate(deltas):

                def qualifies(starts, ends, durations, delta=delta):
                    margin = boundary_margin(durations, refine_margin)
                    distance = point_segment_distance(target, starts, ends)
                    return np.abs(distance - delta) < margin

                refined = adaptive_refine(
                    path.points,
                    path.dt,
                    key.child(k).generator(),
                    qualifies,
                    DEFAULT_DT_MIN,
                    DEFAULT_MAX_SEGMENTS,
                )
                hits[pos, k] = polyline_point_distance(refined.points, target) <= delta
        return hits

    chunks = [range(lo, min(lo + CHUNK_SIZE, n)) for lo in range(0, n, CHUNK_SIZE)]
    hits = np.vstack(map_ordered(run, chunks, workers))
    record = str(StreamKey(seed, (STREAM_BRIDGE,)))
    estimates = tuple(proportion(hits[:, k], record) for k in range(len(deltas)))

    monotone = all(
        big.mean >= small.mean - 3.0 * math.hypot(big.stderr, small.stderr)
        for big, small in zip(estimates, estimates[1:])
    )
    if not monotone:
        logger.warning("Bridge hitting probabilities are not monotone in delta")
    implied = min(e.mean * abs(math.log(d)) for d, e in zip(deltas, estimates))
    return BridgeReport(deltas, estimates, implied, monotone)
