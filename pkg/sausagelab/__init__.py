# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Wiener sausage coverage laboratory."""

from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("sausagelab")
except PackageNotFoundError:  # pragma: no cover - source checkout
    __version__ = "0.0.0+unknown"
