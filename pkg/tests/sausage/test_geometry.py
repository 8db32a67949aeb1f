# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Tests for the exact sausage trace on the unit segment."""

import math

import numpy as np
import pytest

from sausagelab.exceptions import InvalidInputError
from sausagelab.paths import PathSample, sample_path
from sausagelab.sausage.adaptive import polyline_point_distance
from sausagelab.sausage.geometry import (
    cover_intervals,
    covers_segment,
    polyline_intervals,
    xi_measure,
)
from sausagelab.sausage.intervals import IntervalUnion
from sausagelab.streams import StreamKey


def test_single_point():
    u = polyline_intervals(np.array([[0.5, 0.0]]), 0.1)
    assert u.as_array().ravel().tolist() == pytest.approx([0.4, 0.6])


def test_point_off_axis():
    u = polyline_intervals(np.array([[0.5, 0.06]]), 0.1)
    assert u.as_array().ravel().tolist() == pytest.approx([0.42, 0.58])


def test_horizontal_segment():
    u = polyline_intervals(np.array([[0.2, 0.05], [0.6, 0.05]]), 0.1)
    half = math.sqrt(0.01 - 0.0025)
    assert u.as_array().ravel().tolist() == pytest.approx([0.2 - half, 0.6 + half])


def test_vertical_crossing():
    u = polyline_intervals(np.array([[0.5, -1.0], [0.5, 1.0]]), 0.1)
    assert u.as_array().ravel().tolist() == pytest.approx([0.4, 0.6])


def test_diagonal_crossing():
    u = polyline_intervals(np.array([[0.0, -1.0], [1.0, 1.0]]), 0.1)
    half = 0.1 * math.sqrt(5) / 2
    assert u.as_array().ravel().tolist() == pytest.approx([0.5 - half, 0.5 + half])


def test_far_path_is_empty():
    u = polyline_intervals(np.array([[0.0, 1.0], [1.0, 1.0]]), 0.1)
    assert len(u) == 0


def test_matches_pointwise_distance():
    """Test membership agrees with the distance to the polyline on a grid."""
    path = sample_path(1e-3, 0.2, StreamKey(21))
    epsilon = 0.05
    u = polyline_intervals(path.points, epsilon)
    for x in np.linspace(0.0, 1.0, 401):
        distance = polyline_point_distance(path.points, np.array([x, 0.0]))
        if abs(distance - epsilon) < 1e-9:
            continue
        assert u.contains_point(x) == (distance < epsilon)


def test_rejects_one_dimensional_paths():
    with pytest.raises(InvalidInputError):
        polyline_intervals(np.zeros((3, 1)), 0.1)


def test_rejects_nonpositive_epsilon():
    with pytest.raises(InvalidInputError):
        polyline_intervals(np.zeros((3, 2)), 0.0)


def test_cover_intervals_stop_index():
    path = PathSample(0.1, np.array([[0.0, 0.0], [0.5, 0.0], [1.0, 0.0]]))
    early = cover_intervals(path, 0.1, stop_index=1)
    assert xi_measure(early) == pytest.approx(0.6)
    assert xi_measure(cover_intervals(path, 0.1)) == pytest.approx(1.0)
    with pytest.raises(InvalidInputError):
        cover_intervals(path, 0.1, stop_index=3)


class TestCoversSegment:
    def test_full(self):
        path = PathSample(0.1, np.array([[0.0, 0.0], [1.0, 0.0]]))
        assert covers_segment(cover_intervals(path, 0.01))

    def test_gap(self):
        path = PathSample(0.1, np.array([[0.0, 0.0], [0.4, 0.0], [0.4, 1.0]]))
        assert not covers_segment(cover_intervals(path, 0.01))

    def test_slack(self):
        path = PathSample(0.1, np.array([[0.1, 0.0], [0.9, 0.0]]))
        u = cover_intervals(path, 0.01)
        assert not covers_segment(u)
        assert covers_segment(u, slack=0.1)
        assert covers_segment(u, slack=0.6)

    def test_negative_slack(self):
        with pytest.raises(InvalidInputError):
            covers_segment(polyline_intervals(np.zeros((1, 2)), 0.1), slack=-0.1)


class TestCoverOrdering:
    """Containment relations between covers of one path."""

    @pytest.mark.parametrize("key", [1, 2, 3, 4])
    def test_larger_radius_covers_more(self, key):
        path = sample_path(1e-3, 1.0, StreamKey(key), start=(0.5, 0.0))
        wide = cover_intervals(path, 0.1)
        assert wide.contains(cover_intervals(path, 0.05))
        assert wide.contains(cover_intervals(path, 0.01))

    @pytest.mark.parametrize("key", [1, 2, 3, 4])
    def test_longer_run_covers_more(self, key):
        path = sample_path(1e-3, 1.0, StreamKey(key), start=(0.5, 0.0))
        stops = [0, 10, 250, 600, len(path) - 1]
        covers = [cover_intervals(path, 0.05, stop_index=s) for s in stops]
        for earlier, later in zip(covers, covers[1:]):
            assert later.contains(earlier)
            assert later.measure() >= earlier.measure()

    @pytest.mark.parametrize("key", [1, 2, 3])
    @pytest.mark.parametrize("shift", [0.1, -0.1])
    def test_shifted_path_shifts_cover(self, key, shift):
        path = sample_path(1e-3, 1.0, StreamKey(key), start=(0.5, 0.0))
        moved = PathSample(path.dt, path.points + np.array([shift, 0.0]))
        lo, hi = max(shift, 0.0), min(1.0, 1.0 + shift)
        base = cover_intervals(path, 0.05).as_array()
        expected = IntervalUnion.from_pairs(base[:, 0] + shift, base[:, 1] + shift)
        seen = np.clip(cover_intervals(moved, 0.05).as_array(), lo, hi)
        seen = IntervalUnion.from_pairs(seen[:, 0], seen[:, 1])
        assert len(seen) == len(expected)
        np.testing.assert_allclose(seen.as_array(), expected.as_array(), atol=1e-12)
