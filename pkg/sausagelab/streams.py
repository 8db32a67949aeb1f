# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Counter-based random streams keyed by (seed, index)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from sausagelab.exceptions import InvalidInputError


@dataclass(frozen=True)
class StreamKey:
    """Identifier of an independent random stream.

    The generator is a Philox bit generator seeded from a SeedSequence whose
    spawn key is ``index``, so a key always yields the same draws no matter
    which worker builds it or in which order.
    """

    seed: int
    index: tuple[int, ...] = ()

    def __post_init__(self):
        if self.seed < 0:
            raise InvalidInputError(f"Seed must be nonnegative: {self.seed}")
        if any(i < 0 for i in self.index):
            raise InvalidInputError(f"Stream index must be nonnegative: {self.index}")

    def child(self, *index: int) -> StreamKey:
        """Return the key of a sub-stream."""
        return StreamKey(self.seed, self.index + tuple(int(i) for i in index))

    def generator(self) -> np.random.Generator:
        sequence = np.random.SeedSequence(self.seed, spawn_key=self.index)
        return np.random.Generator(np.random.Philox(sequence))

    def __str__(self) -> str:
        return "/".join(str(part) for part in (self.seed, *self.index))


def as_generator(stream: StreamKey | np.random.Generator) -> np.random.Generator:
    """Accept either a key or an already built generator."""
    if isinstance(stream, StreamKey):
        return stream.generator()
    return stream


def stream_record(stream: StreamKey | np.random.Generator) -> str:
    if isinstance(stream, StreamKey):
        return str(stream)
    return "generator"
