# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Harmonic hitting probabilities in the strip: walk on spheres and FD oracle."""

from sausagelab.wos.checks import (
    AlphaGrid,
    Eq9Report,
    Lemma4Report,
    annulus_sandwich,
    eq9_identity_check,
    g_of_y,
    g_samples,
    lemma4_shape_checks,
    wos_fd_agreement,
)
from sausagelab.wos.fd import FdGrid, fd_oracle
from sausagelab.wos.walk import WosConfig, wos_estimate, wos_outcomes

__all__ = [
    "AlphaGrid",
    "Eq9Report",
    "FdGrid",
    "Lemma4Report",
    "WosConfig",
    "annulus_sandwich",
    "eq9_identity_check",
    "fd_oracle",
    "g_of_y",
    "g_samples",
    "lemma4_shape_checks",
    "wos_estimate",
    "wos_fd_agreement",
    "wos_outcomes",
]
