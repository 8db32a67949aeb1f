# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Tests for Brownian path and bridge sampling."""

import numpy as np
import pytest
from scipy import stats

from sausagelab.exceptions import InvalidInputError
from sausagelab.paths import (
    BridgeSpec,
    PathSample,
    bridge_infill,
    first_exit_index,
    refine,
    sample_bridge,
    sample_path,
)
from sausagelab.streams import StreamKey


class TestSamplePath:
    """Tests for sample_path."""

    def test_shape_and_start(self):
        path = sample_path(0.01, 1.0, StreamKey(1))
        assert path.points.shape == (101, 2)
        assert path.start == (0.0, 0.0)
        assert path.duration == pytest.approx(1.0)

    def test_grid_adjusted_to_duration(self):
        path = sample_path(0.3, 1.0, StreamKey(1), dim=1)
        assert len(path) == 4
        assert path.dt == pytest.approx(1 / 3)
        assert path.times()[-1] == pytest.approx(1.0)

    def test_custom_start(self):
        path = sample_path(0.1, 1.0, StreamKey(1), start=(0.5, 0.25))
        assert path.start == (0.5, 0.25)

    def test_same_key_same_path(self):
        a = sample_path(0.01, 1.0, StreamKey(7, (1, 2)))
        b = sample_path(0.01, 1.0, StreamKey(7, (1, 2)))
        np.testing.assert_array_equal(a.points, b.points)
        assert a.seed_record == "7/1/2"

    def test_different_keys_differ(self):
        a = sample_path(0.01, 1.0, StreamKey(7, (1,)))
        b = sample_path(0.01, 1.0, StreamKey(7, (2,)))
        assert not np.array_equal(a.points, b.points)

    def test_increment_variance(self):
        path = sample_path(1e-3, 10.0, StreamKey(3))
        increments = np.diff(path.points, axis=0)
        assert increments.var() == pytest.approx(1e-3, rel=0.05)

    def test_points_are_read_only(self):
        path = sample_path(0.1, 1.0, StreamKey(1))
        with pytest.raises(ValueError):
            path.points[0, 0] = 1.0

    @pytest.mark.parametrize("dt,duration", [(0.0, 1.0), (2.0, 1.0), (0.1, np.inf)])
    def test_invalid_grid(self, dt, duration):
        with pytest.raises(InvalidInputError):
            sample_path(dt, duration, StreamKey(1))

    def test_invalid_dimension(self):
        with pytest.raises(InvalidInputError):
            sample_path(0.1, 1.0, StreamKey(1), dim=3)

    def test_first_half_matches_shorter_path(self):
        """Test X at T/2 of a T-path has the law of X at the end of a T/2-path."""
        n = 10_000
        long_rng = np.random.default_rng(101)
        short_rng = np.random.default_rng(202)
        halfway = np.array(
            [sample_path(0.1, 2.0, long_rng).points[10, 0] for _ in range(n)]
        )
        ends = np.array(
            [sample_path(0.1, 1.0, short_rng).points[-1, 0] for _ in range(n)]
        )
        assert stats.ks_2samp(halfway, ends).pvalue > 1e-3
        assert halfway.var() == pytest.approx(1.0, rel=0.05)


class TestPathSample:
    """Tests for the PathSample container."""

    def test_one_dimensional_input(self):
        path = PathSample(0.5, np.array([0.0, 1.0, -1.0]))
        assert path.dim == 1
        assert path.y.tolist() == [0.0, 1.0, -1.0]

    def test_rejects_three_dimensions(self):
        with pytest.raises(InvalidInputError):
            PathSample(0.1, np.zeros((3, 3)))

    def test_rejects_bad_dt(self):
        with pytest.raises(InvalidInputError):
            PathSample(-1.0, np.zeros((3, 2)))

    def test_truncated(self):
        path = PathSample(0.1, np.arange(10.0).reshape(5, 2))
        short = path.truncated(2)
        assert len(short) == 3
        with pytest.raises(InvalidInputError):
            path.truncated(5)

    def test_dump_csv(self, tmp_path):
        path = PathSample(0.5, np.array([[0.0, 0.0], [1.0, 2.0]]))
        target = tmp_path / "path.csv"
        path.dump_csv(target)
        lines = target.read_text().splitlines()
        assert lines == ["t,x,y", "0,0,0", "0.5,1,2"]


class TestBridges:
    """Tests for bridge sampling and refinement."""

    def test_bridge_pinned_at_both_ends(self):
        spec = BridgeSpec((0.0, 0.0), (1.0, -0.5), 2.0)
        path = sample_bridge(spec, 0.01, StreamKey(5))
        assert path.start == (0.0, 0.0)
        assert tuple(path.points[-1]) == (1.0, -0.5)
        assert path.duration == pytest.approx(2.0)

    def test_bridge_marginal_off_midpoint(self):
        """Test B_s has mean q1 + (s/T)(q2 - q1) and variance s(T - s)/T."""
        q1, q2, duration, s = np.array([0.0, 0.0]), np.array([1.0, -0.5]), 2.0, 0.5
        spec = BridgeSpec(tuple(q1), tuple(q2), duration)
        rng = np.random.default_rng(33)
        n = 5000
        marginal = np.array([sample_bridge(spec, 0.5, rng).points[1] for _ in range(n)])
        mean = q1 + (s / duration) * (q2 - q1)
        variance = s * (duration - s) / duration
        assert marginal.mean(axis=0) == pytest.approx(
            mean, abs=4 * np.sqrt(variance / n)
        )
        assert marginal.var(axis=0, ddof=1) == pytest.approx(
            [variance, variance], abs=4 * variance * np.sqrt(2 / (n - 1))
        )

    def test_bridge_spec_validation(self):
        with pytest.raises(InvalidInputError):
            BridgeSpec((0.0,), (1.0, 0.0), 1.0)
        with pytest.raises(InvalidInputError):
            BridgeSpec((0.0,), (1.0,), 0.0)

    def test_infill_midpoint_law(self):
        """Test a bridge midpoint is centered with variance T/4."""
        rng = np.random.default_rng(11)
        n = 20_000
        starts = np.zeros((n, 1))
        ends = np.full((n, 1), 2.0)
        mids = bridge_infill(starts, ends, 1.0, 2, rng)[:, 0, 0]
        assert mids.mean() == pytest.approx(1.0, abs=5 * 0.5 / np.sqrt(n))
        assert mids.var() == pytest.approx(0.25, rel=0.05)

    def test_infill_factor_one_is_empty(self):
        rng = np.random.default_rng(1)
        out = bridge_infill(np.zeros((3, 2)), np.ones((3, 2)), 1.0, 1, rng)
        assert out.shape == (3, 0, 2)

    def test_refine_keeps_original_points(self):
        path = sample_path(0.1, 1.0, StreamKey(2))
        fine = refine(path, 4, StreamKey(2, (99,)))
        assert len(fine) == 4 * (len(path) - 1) + 1
        assert fine.dt == pytest.approx(path.dt / 4)
        np.testing.assert_array_equal(fine.points[::4], path.points)
        assert fine.seed_record == "2+2/99"

    def test_refine_factor_one(self):
        path = sample_path(0.1, 1.0, StreamKey(2))
        assert refine(path, 1, StreamKey(3)) is path

    def test_refine_rejects_zero_factor(self):
        path = sample_path(0.1, 1.0, StreamKey(2))
        with pytest.raises(InvalidInputError):
            refine(path, 0, StreamKey(3))


def test_first_exit_index():
    path = PathSample(0.1, np.array([[0.0, 0.0], [0.0, 0.3], [0.0, -0.6], [0.0, 0.9]]))
    assert first_exit_index(path, 0.5) == 2
    assert first_exit_index(path, 1.0) is None
    with pytest.raises(InvalidInputError):
        first_exit_index(path, 0.0)
