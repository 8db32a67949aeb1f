# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Sampling of Brownian paths and bridges on uniform grids."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from sausagelab.exceptions import InvalidInputError
from sausagelab.streams import StreamKey, as_generator, stream_record


@dataclass(frozen=True, eq=False)
class PathSample:
    """
    A discretized Brownian trajectory.

    ``points`` has shape (L, d) with d in {1, 2}; point i sits at time i*dt.
    The array is read-only once the sample is built.
    """

    dt: float
    points: np.ndarray
    seed_record: str = ""
    start: tuple[float, ...] = field(init=False)

    def __post_init__(self):
        points = np.array(self.points, dtype=float)
        if points.ndim == 1:
            points = points[:, None]
        if points.ndim != 2 or points.shape[1] not in (1, 2):
            raise InvalidInputError(f"Path points must be (L, 1|2), got {points.shape}")
        if points.shape[0] < 1:
            raise InvalidInputError("A path needs at least one point")
        if not (math.isfinite(self.dt) and self.dt > 0):
            raise InvalidInputError(f"dt must be positive, got {self.dt}")
        points.setflags(write=False)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "start", tuple(float(c) for c in points[0]))

    def __len__(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    @property
    def duration(self) -> float:
        return (len(self) - 1) * self.dt

    @property
    def x(self) -> np.ndarray:
        return self.points[:, 0]

    @property
    def y(self) -> np.ndarray:
        """Vertical coordinate; the only coordinate of a 1D path."""
        return self.points[:, -1]

    def times(self) -> np.ndarray:
        return np.arange(len(self)) * self.dt

    def truncated(self, stop_index: int) -> PathSample:
        """The path up to and including ``stop_index``."""
        if not 0 <= stop_index < len(self):
            raise InvalidInputError(f"stop_index {stop_index} outside path")
        return PathSample(self.dt, self.points[: stop_index + 1], self.seed_record)

    def dump_csv(self, target: Path) -> None:
        """Write one (t, x, y) row per grid point; debugging aid."""
        with open(target, "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(["t", "x", "y"] if self.dim == 2 else ["t", "x"])
            for t, row in zip(self.times(), self.points):
                writer.writerow([format(t, ".17g"), *(format(v, ".17g") for v in row)])


@dataclass(frozen=True)
class BridgeSpec:
    q1: tuple[float, ...]
    q2: tuple[float, ...]
    duration: float

    def __post_init__(self):
        if not (math.isfinite(self.duration) and self.duration > 0):
            raise InvalidInputError(
                f"Bridge duration must be positive: {self.duration}"
            )
        if len(self.q1) != len(self.q2):
            raise InvalidInputError("Bridge endpoints must share a dimension")


def _grid(dt: float, duration: float) -> tuple[int, float]:
    if not (math.isfinite(dt) and math.isfinite(duration)):
        raise InvalidInputError("dt and duration must be finite")
    if not 0 < dt <= duration:
        raise InvalidInputError(f"Need 0 < dt <= duration, got dt={dt}, T={duration}")
    n_steps = max(1, round(duration / dt))
    return n_steps, duration / n_steps


def sample_path(
    dt: float,
    duration: float,
    stream: StreamKey | np.random.Generator,
    dim: int = 2,
    start: tuple[float, ...] | None = None,
) -> PathSample:
    """
    Sample Brownian motion on a uniform grid.

    The step count is duration/dt rounded to the nearest integer, and the
    grid spacing is adjusted so the path ends exactly at ``duration``.
    """
    if dim not in (1, 2):
        raise InvalidInputError(f"Unsupported dimension {dim}")
    n_steps, step = _grid(dt, duration)
    rng = as_generator(stream)
    origin = np.zeros(dim) if start is None else np.asarray(start, dtype=float)
    points = np.empty((n_steps + 1, dim))
    points[0] = origin
    points[1:] = origin + np.cumsum(
        rng.normal(scale=math.sqrt(step), size=(n_steps, dim)), axis=0
    )
    return PathSample(step, points, stream_record(stream))


def bridge_infill(
    starts: np.ndarray,
    ends: np.ndarray,
    durations: np.ndarray,
    factor: int,
    rng: np.random.Generator,
) -> np.ndarray:
    """
    Interior points of independent Brownian bridges.

    Each bridge runs from ``starts[k]`` to ``ends[k]`` over ``durations[k]``
    and is observed at ``factor - 1`` equally spaced interior times.

    Returns:
        Array of shape (segments, factor - 1, d)
    """
    starts = np.asarray(starts, dtype=float)
    ends = np.asarray(ends, dtype=float)
    durations = np.broadcast_to(np.asarray(durations, dtype=float), starts.shape[:1])
    n_seg, dim = starts.shape
    if factor < 2 or n_seg == 0:
        return np.empty((n_seg, 0, dim))
    scale = np.sqrt(durations / factor)[:, None, None]
    walk = np.cumsum(rng.normal(size=(n_seg, factor, dim)) * scale, axis=1)
    frac = (np.arange(1, factor) / factor)[None, :, None]
    noise = walk[:, :-1, :] - frac * walk[:, -1:, :]
    return starts[:, None, :] + frac * (ends - starts)[:, None, :] + noise


def sample_bridge(
    spec: BridgeSpec, dt: float, stream: StreamKey | np.random.Generator
) -> PathSample:
    """Sample a Brownian bridge from q1 to q2 pinned exactly at both ends."""
    n_steps, step = _grid(dt, spec.duration)
    rng = as_generator(stream)
    q1 = np.asarray(spec.q1, dtype=float)
    q2 = np.asarray(spec.q2, dtype=float)
    durations = np.array([spec.duration])
    interior = bridge_infill(q1[None], q2[None], durations, n_steps, rng)
    points = np.vstack([q1, interior[0], q2])
    return PathSample(step, points, stream_record(stream))


def refine(
    path: PathSample, factor: int, stream: StreamKey | np.random.Generator
) -> PathSample:
    """
    Divide every grid step into ``factor`` steps.

    Original points keep their times; the new points come from independent
    bridges between consecutive original points.
    """
    if factor < 1:
        raise InvalidInputError(f"Refinement factor must be >= 1, got {factor}")
    if factor == 1:
        return path
    record = f"{path.seed_record}+{stream_record(stream)}"
    if len(path) == 1:
        return PathSample(path.dt / factor, path.points, record)
    rng = as_generator(stream)
    starts = path.points[:-1]
    interior = bridge_infill(
        starts, path.points[1:], np.full(len(path) - 1, path.dt), factor, rng
    )
    blocks = np.concatenate([starts[:, None, :], interior], axis=1)
    points = np.vstack([blocks.reshape(-1, path.dim), path.points[-1:]])
    return PathSample(path.dt / factor, points, record)


def first_exit_index(path: PathSample, band: float) -> int | None:
    """Smallest index where ``|y|`` reaches ``band``, or None."""
    if band <= 0:
        raise InvalidInputError(f"band must be positive, got {band}")
    hits = np.flatnonzero(np.abs(path.y) >= band)
    return int(hits[0]) if hits.size else None
