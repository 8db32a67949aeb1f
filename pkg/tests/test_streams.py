# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Tests for counter-based random streams."""

import numpy as np
import pytest

from sausagelab.exceptions import InvalidInputError
from sausagelab.streams import StreamKey, as_generator, stream_record


def test_same_key_same_draws():
    """Test a key always reproduces its draws."""
    a = StreamKey(7, (1, 2)).generator().standard_normal(5)
    b = StreamKey(7, (1, 2)).generator().standard_normal(5)
    np.testing.assert_array_equal(a, b)


def test_different_index_different_draws():
    """Test sibling keys give different streams."""
    a = StreamKey(7, (1, 2)).generator().standard_normal(5)
    b = StreamKey(7, (1, 3)).generator().standard_normal(5)
    assert not np.array_equal(a, b)


def test_child_extends_index():
    """Test child keys append to the index."""
    key = StreamKey(3, (1,)).child(4, 5)
    assert key == StreamKey(3, (1, 4, 5))


def test_str_renders_path():
    """Test the string form used as seed record."""
    assert str(StreamKey(9, (2, 0))) == "9/2/0"
    assert str(StreamKey(9)) == "9"


def test_negative_seed_rejected():
    """Test negative seeds are rejected."""
    with pytest.raises(InvalidInputError):
        StreamKey(-1)


def test_negative_index_rejected():
    """Test negative index parts are rejected."""
    with pytest.raises(InvalidInputError):
        StreamKey(1, (0, -2))


def test_as_generator_accepts_both():
    """Test as_generator passes generators through and builds from keys."""
    rng = np.random.default_rng(0)
    assert as_generator(rng) is rng
    assert isinstance(as_generator(StreamKey(1)), np.random.Generator)


def test_stream_record():
    """Test the seed record of keys and raw generators."""
    assert stream_record(StreamKey(5, (1,))) == "5/1"
    assert stream_record(np.random.default_rng(0)) == "generator"
