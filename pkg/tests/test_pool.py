# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Tests for the ordered thread pool."""

import threading
import time

import pytest

from sausagelab.pool import map_ordered


def test_sequential_keeps_order():
    """Test one worker runs in order in the calling thread."""
    caller = threading.get_ident()
    seen = []

    def fn(x):
        seen.append(threading.get_ident())
        return x * x

    assert map_ordered(fn, range(5), workers=1) == [0, 1, 4, 9, 16]
    assert set(seen) == {caller}


def test_parallel_results_in_submission_order():
    """Test results follow item order even when later items finish first."""

    def fn(x):
        time.sleep(0.01 * (5 - x))
        return x

    assert map_ordered(fn, range(5), workers=4) == [0, 1, 2, 3, 4]


def test_empty_items():
    """Test an empty work list."""
    assert map_ordered(lambda x: x, [], workers=8) == []


def test_exception_propagates():
    """Test the first failure is raised to the caller."""

    def fn(x):
        if x == 2:
            raise ValueError("boom")
        return x

    with pytest.raises(ValueError, match="boom"):
        map_ordered(fn, range(6), workers=3)
