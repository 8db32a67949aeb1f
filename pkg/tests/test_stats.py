# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Tests for Monte Carlo estimates."""

import math

import numpy as np
import pytest

from sausagelab.exceptions import InvalidInputError
from sausagelab.stats import (
    Estimate,
    combined_stderr,
    proportion,
    sample_mean,
    within,
)


class TestEstimate:
    """Tests for the Estimate record."""

    def test_rejects_empty_sample(self):
        with pytest.raises(InvalidInputError):
            Estimate(mean=0.5, stderr=0.1, n=0)

    def test_rejects_negative_or_nan_stderr(self):
        with pytest.raises(InvalidInputError):
            Estimate(mean=0.5, stderr=-0.1, n=10)
        with pytest.raises(InvalidInputError):
            Estimate(mean=0.5, stderr=math.nan, n=10)

    def test_relative_error(self):
        estimate = Estimate(mean=0.5, stderr=0.05, n=10)
        assert estimate.relative_error == pytest.approx(0.1)
        assert Estimate(mean=0.0, stderr=0.05, n=10).relative_error == math.inf

    def test_to_dict(self):
        data = Estimate(mean=0.5, stderr=0.1, n=4, seed_record="1/2").to_dict()
        assert data["mean"] == 0.5
        assert data["seed_record"] == "1/2"
        assert data["details"] == {}


class TestProportion:
    """Tests for Bernoulli proportions."""

    def test_wilson_stderr_positive_when_all_agree(self):
        est = proportion(np.zeros(100, dtype=bool))
        assert est.mean == 0.0
        assert est.stderr > 0

    def test_plain_stderr(self):
        hits = np.array([True, False, True, False])
        est = proportion(hits, wilson=False)
        assert est.mean == 0.5
        assert est.stderr == pytest.approx(math.sqrt(0.25 / 4))

    def test_wilson_close_to_plain_for_large_n(self):
        hits = np.arange(10_000) % 4 == 0
        wilson = proportion(hits)
        plain = proportion(hits, wilson=False)
        assert wilson.stderr == pytest.approx(plain.stderr, rel=1e-3)

    def test_empty_rejected(self):
        with pytest.raises(InvalidInputError):
            proportion(np.array([], dtype=bool))


def test_sample_mean():
    """Test mean and standard error with ddof=1."""
    est = sample_mean(np.array([1.0, 2.0, 3.0, 4.0]), "rec")
    assert est.mean == 2.5
    assert est.stderr == pytest.approx(np.std([1, 2, 3, 4], ddof=1) / 2.0)
    assert est.seed_record == "rec"


def test_sample_mean_single_value():
    """Test a single sample has zero standard error."""
    est = sample_mean(np.array([3.0]))
    assert est.mean == 3.0
    assert est.stderr == 0.0


def test_combined_stderr_and_within():
    """Test error combination and sigma comparisons."""
    assert combined_stderr(3.0, 4.0) == pytest.approx(5.0)
    assert within(1.0, 1.3, 0.1, 4.0)
    assert not within(1.0, 1.5, 0.1, 4.0)
