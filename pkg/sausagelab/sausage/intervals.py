# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Sorted disjoint unions of closed subintervals of [0, 1]."""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np

from sausagelab.constants import MERGE_TOLERANCE
from sausagelab.exceptions import InvalidInputError


@dataclass(frozen=True)
class IntervalUnion:
    """
    A finite union of closed intervals inside [0, 1].

    Pieces are strictly increasing and separated by more than the merge
    tolerance. Build instances with :meth:`from_pairs`, which clips, drops
    empty pieces and merges overlapping or touching ones.
    """

    intervals: tuple[tuple[float, float], ...] = ()

    def __post_init__(self):
        previous_right = -np.inf
        for left, right in self.intervals:
            if not 0.0 <= left < right <= 1.0:
                raise InvalidInputError(f"Invalid interval ({left}, {right})")
            if left <= previous_right:
                raise InvalidInputError("Intervals must be sorted and disjoint")
            previous_right = right

    @classmethod
    def empty(cls) -> IntervalUnion:
        return cls(())

    @classmethod
    def from_pairs(
        cls,
        lefts: np.ndarray,
        rights: np.ndarray,
        tolerance: float = MERGE_TOLERANCE,
    ) -> IntervalUnion:
        lefts = np.clip(np.asarray(lefts, dtype=float).ravel(), 0.0, 1.0)
        rights = np.clip(np.asarray(rights, dtype=float).ravel(), 0.0, 1.0)
        keep = rights > lefts
        lefts, rights = lefts[keep], rights[keep]
        if lefts.size == 0:
            return cls.empty()

        order = np.argsort(lefts, kind="stable")
        lefts, rights = lefts[order], rights[order]
        reach = np.maximum.accumulate(rights)
        starts = np.concatenate(([True], lefts[1:] > reach[:-1] + tolerance))
        first = np.flatnonzero(starts)
        merged_rights = np.maximum.reduceat(rights, first)
        return cls(
            tuple(
                (float(left), float(right))
                for left, right in zip(lefts[first], merged_rights)
            )
        )

    def __iter__(self) -> Iterator[tuple[float, float]]:
        return iter(self.intervals)

    def __len__(self) -> int:
        return len(self.intervals)

    def as_array(self) -> np.ndarray:
        return np.array(self.intervals, dtype=float).reshape(-1, 2)

    def measure(self) -> float:
        bounds = self.as_array()
        return float(np.sum(bounds[:, 1] - bounds[:, 0]))

    def union(self, other: IntervalUnion) -> IntervalUnion:
        both = np.vstack([self.as_array(), other.as_array()])
        return IntervalUnion.from_pairs(both[:, 0], both[:, 1])

    def contains_point(self, x: float) -> bool:
        return any(left <= x <= right for left, right in self.intervals)

    def contains(
        self, other: IntervalUnion, tolerance: float = MERGE_TOLERANCE
    ) -> bool:
        """True when every piece of ``other`` lies inside one piece of ``self``."""
        for left, right in other:
            if not any(
                mine_left - tolerance <= left and right <= mine_right + tolerance
                for mine_left, mine_right in self.intervals
            ):
                return False
        return True
