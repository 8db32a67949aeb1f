# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Tests for the coverage martingale."""

import math

import numpy as np
import pytest

from sausagelab.estimators.martingale import (
    alpha_midpoints,
    martingale_study,
    martingale_track,
    qv_ratio,
)
from sausagelab.exceptions import InvalidInputError
from sausagelab.paths import PathSample, sample_path
from sausagelab.streams import StreamKey
from sausagelab.wos.walk import WosConfig

WOS = WosConfig(0.2, n_walks=100)


def test_alpha_midpoints():
    mids, width = alpha_midpoints(0.3)
    assert width == pytest.approx(0.25)
    assert mids.tolist() == pytest.approx([0.125, 0.375, 0.625, 0.875])


def test_qv_ratio():
    value = qv_ratio(0.1, 0.01, math.exp(-1), 0.1)
    scale = 2.0 / abs(math.log(0.1))
    assert value == pytest.approx(0.01 / (scale**2 * 0.01))


def test_track_starts_with_covered_measure():
    path = sample_path(1e-3, 0.1, StreamKey(1))
    track = martingale_track(path, 0.2, 0.2, WOS, StreamKey(1, (1,)), n_checkpoints=4)
    assert track.indices[0] == 0
    assert track.indices[-1] == len(path) - 1
    assert track.values[0] >= 0.2
    assert track.tau_index is None
    assert not track.frozen.any()


def test_track_freezes_after_exit():
    points = np.array([[0.0, 0.0], [0.1, 0.5], [0.2, 1.2], [0.3, 0.5], [0.4, 0.0]])
    path = PathSample(0.25, points)
    track = martingale_track(path, 0.2, 0.2, WOS, StreamKey(2), n_checkpoints=4)
    assert track.tau_index == 2
    assert track.frozen.tolist() == [False, False, True, True, True]
    assert track.values[2] == track.values[3] == track.values[4]
    assert track.increments()[-1]["frozen"]


def test_track_rejects_bad_inputs():
    path = sample_path(1e-2, 0.1, StreamKey(1))
    with pytest.raises(InvalidInputError):
        martingale_track(path, 0.2, 0.3, WOS, StreamKey(1))
    with pytest.raises(InvalidInputError):
        martingale_track(path, 0.1, 0.1, WOS, StreamKey(1))


def test_study_summary():
    report = martingale_study(
        4, 0.2, 1e-3, 0.2, WOS, seed=3, n_checkpoints=5, workers=2
    )
    assert len(report.tracks) == 4
    assert len(report.rows()) == sum(t.indices.size for t in report.tracks)
    summary = report.summary()
    assert summary["skipped_checkpoints"] == 0
    assert report.m0_scaled == pytest.approx(report.m0.mean * abs(math.log(0.2)))
    if math.isfinite(report.c0):
        assert 0.0 <= report.ceiling_fraction <= 1.0
        assert 0.0 <= report.azuma_bound
