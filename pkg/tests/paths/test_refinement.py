# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

import numpy as np
import pytest

from sausagelab.paths import adaptive_refine

POINTS = np.array([[0.0, 0.0], [1.0, 1.0]])


def _always(starts, ends, durations):
    return np.ones(len(durations), dtype=bool)


def _never(starts, ends, durations):
    return np.zeros(len(durations), dtype=bool)


def test_nothing_qualifies():
    result = adaptive_refine(POINTS, 1.0, np.random.default_rng(0), _never, 1e-8, 100)
    np.testing.assert_array_equal(result.points, POINTS)
    assert result.refined_segments == 0
    assert not result.budget_limited
    assert result.final_dt == 1.0


def test_splits_down_to_dt_min():
    result = adaptive_refine(POINTS, 1.0, np.random.default_rng(0), _always, 0.25, 100)
    assert result.points.shape == (5, 2)
    assert result.durations.tolist() == [0.25] * 4
    assert result.refined_segments == 3
    assert result.budget_limited
    np.testing.assert_array_equal(result.points[[0, -1]], POINTS)


def test_segment_budget():
    result = adaptive_refine(POINTS, 1.0, np.random.default_rng(0), _always, 1e-8, 8)
    assert len(result.durations) <= 8
    assert result.budget_limited
    assert result.durations.sum() == pytest.approx(1.0)


def test_only_qualifying_segments_split():
    points = np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]])

    def first_only(starts, ends, durations):
        return (starts == 0.0).all(axis=1) & (durations > 0.6)

    rng = np.random.default_rng(0)
    result = adaptive_refine(points, 1.0, rng, first_only, 1e-8, 100)
    assert result.durations.tolist() == [0.5, 0.5, 1.0]
    assert not result.budget_limited
    assert result.final_dt == 0.5
