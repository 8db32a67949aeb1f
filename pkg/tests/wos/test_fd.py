# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

import math

import pytest

from sausagelab.analytic.probabilities import annulus_hit_prob
from sausagelab.exceptions import ConvergenceError, InvalidInputError
from sausagelab.wos.fd import fd_oracle


@pytest.fixture(scope="module")
def small_fd():
    """A coarse FD solution for epsilon = 0.2 on a short strip."""
    return fd_oracle(0.2, 0.05, x_cutoff=5.0, tolerance=1e-7)


def test_boundary_values(small_fd):
    assert small_fd.value_at(0.0, 0.1) == 1.0
    assert small_fd.value_at(0.0, 1.0) == 0.0
    assert small_fd.value_at(5.0, 0.5) == 0.0
    assert small_fd.residual <= 1e-7


def test_symmetric(small_fd):
    value = small_fd.value_at(0.4, 0.3)
    assert small_fd.value_at(-0.4, 0.3) == pytest.approx(value, abs=1e-3)
    assert small_fd.value_at(0.4, -0.3) == pytest.approx(value, abs=1e-3)


def test_decreasing_away_from_ball(small_fd):
    values = [small_fd.value_at(0.0, y) for y in (0.3, 0.5, 0.7, 0.9)]
    assert values == sorted(values, reverse=True)


def test_between_annulus_bounds(small_fd):
    lower = annulus_hit_prob(0.5, 0.2, 1.0)
    upper = annulus_hit_prob(0.5, 0.2, math.hypot(5.0, 1.0))
    assert lower - 0.02 <= small_fd.value_at(0.0, 0.5) <= upper + 0.02


def test_values_read_only(small_fd):
    with pytest.raises(ValueError):
        small_fd.values[0, 0] = 1.0


def test_rejects_coarse_grid():
    with pytest.raises(InvalidInputError):
        fd_oracle(0.2, 0.1)


def test_reports_nonconvergence():
    with pytest.raises(ConvergenceError) as excinfo:
        fd_oracle(0.2, 0.05, x_cutoff=5.0, tolerance=1e-14, max_sweeps=1)
    assert excinfo.value.achieved_error > 1e-14
