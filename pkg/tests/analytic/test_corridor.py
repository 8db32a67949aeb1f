# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

import math

import numpy as np
import pytest

from sausagelab.analytic.corridor import (
    TUNING_COVER,
    CorridorSpec,
    corridor_centers,
    corridor_n,
    default_gamma,
)
from sausagelab.exceptions import InvalidInputError


def test_centers_sweep_back_and_forth():
    spec = corridor_centers(3)
    expected = [1, 2, 3, 2, 1, 0, 1, 2, 3]
    assert spec.centers == pytest.approx([x / 3 for x in expected])
    assert spec.radius == pytest.approx(1 / 3)
    assert spec.checkpoint_dt == pytest.approx(1 / 9)
    assert spec.n_checkpoints == 9


def test_center_points_lie_on_axis():
    points = corridor_centers(2).center_points()
    assert points.shape == (4, 2)
    assert points[:, 1].tolist() == [0.0, 0.0, 0.0, 0.0]
    assert points[:, 0].tolist() == pytest.approx([0.5, 1.0, 0.5, 0.0])


def test_single_ball():
    spec = corridor_centers(1)
    assert spec.centers == (1.0,)


@pytest.mark.parametrize("n", range(1, 51))
def test_center_sequence_shape(n):
    spec = corridor_centers(n)
    centers = np.asarray(spec.centers)
    assert len(centers) == n * n
    np.testing.assert_allclose(np.abs(np.diff(centers)), 1.0 / n, rtol=0, atol=1e-12)
    assert ((centers >= 0.0) & (centers <= 1.0)).all()
    assert 1.0 in centers
    if n > 1:
        assert 0.0 in centers
    assert spec.radius == pytest.approx(1.0 / n)
    assert spec.checkpoint_dt == pytest.approx(1.0 / n**2)


def test_spec_rejects_bad_steps():
    with pytest.raises(InvalidInputError):
        CorridorSpec(
            n_balls_param=2,
            centers=(0.5, 1.0, 1.0, 0.5),
            radius=0.5,
            checkpoint_dt=0.25,
        )


def test_spec_rejects_wrong_radius():
    with pytest.raises(InvalidInputError):
        CorridorSpec(
            n_balls_param=2,
            centers=(0.5, 1.0, 0.5, 0.0),
            radius=0.25,
            checkpoint_dt=0.25,
        )


class TestCorridorN:
    def test_theta_tuning(self):
        # |log 0.05| = 2.996
        assert corridor_n(0.1, 1.0, 1.0) == 3

    def test_cover_tuning(self):
        # 2.996 * |log 0.1| = 6.898
        assert corridor_n(0.1, 1.0, 1.0, TUNING_COVER) == 7

    def test_scales_with_k(self):
        assert corridor_n(0.1, 1.0, 2.0) == 6

    def test_at_least_one(self):
        assert corridor_n(0.4, 1e-6, 1e-6) == 1

    @pytest.mark.parametrize("epsilon", [0.0, 0.5, 0.9])
    def test_epsilon_range(self, epsilon):
        with pytest.raises(InvalidInputError):
            corridor_n(epsilon, 1.0, 1.0)

    def test_unknown_tuning(self):
        with pytest.raises(InvalidInputError):
            corridor_n(0.1, 1.0, 1.0, "other")


def test_default_gamma():
    assert default_gamma(0.5) == pytest.approx(math.log(6.0))
    assert math.exp(-default_gamma(0.2)) == pytest.approx(0.8 / 3)


@pytest.mark.parametrize("theta", [0.0, 1.0])
def test_default_gamma_range(theta):
    with pytest.raises(InvalidInputError):
        default_gamma(theta)
