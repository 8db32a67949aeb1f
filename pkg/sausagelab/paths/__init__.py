# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Brownian paths, bridges and lattice walks on uniform time grids."""

from sausagelab.paths.lattice import LatticePath, sample_srw, sample_srw_batch
from sausagelab.paths.refinement import RefinedPolyline, adaptive_refine
from sausagelab.paths.sample import (
    BridgeSpec,
    PathSample,
    bridge_infill,
    first_exit_index,
    refine,
    sample_bridge,
    sample_path,
)

__all__ = [
    "BridgeSpec",
    "LatticePath",
    "PathSample",
    "RefinedPolyline",
    "adaptive_refine",
    "bridge_infill",
    "first_exit_index",
    "refine",
    "sample_bridge",
    "sample_path",
    "sample_srw",
    "sample_srw_batch",
]
