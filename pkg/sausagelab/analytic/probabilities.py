# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Closed-form hitting probabilities used as oracles and importance weights."""

import logging
import math
import warnings

import numpy as np
from scipy import integrate, special
from tenacity import Retrying, retry_if_exception_type, stop_after_attempt

from sausagelab.constants import (
    MAX_RETRY_ATTEMPTS,
    QUAD_ABS_TOLERANCE,
    QUAD_BASE_LIMIT,
)
from sausagelab.exceptions import InvalidInputError, QuadratureError

logger = logging.getLogger(__name__)


def _clamp(value: float) -> float:
    return min(1.0, max(0.0, float(value)))


def _require_finite(**values: float) -> None:
    for name, value in values.items():
        if not math.isfinite(value):
            raise InvalidInputError(f"{name} must be finite, got {value}")


def annulus_hit_prob(z_radius: float, a: float, b: float) -> float:
    """
    Probability that planar Brownian motion started at radius ``z_radius``
    hits the circle of radius ``a`` before the circle of radius ``b``.

    Args:
        z_radius: Distance of the start from the common center
        a: Inner radius
        b: Outer radius

    Returns:
        log(b/|z|) / log(b/a), clamped to [0, 1]

    Raises:
        InvalidInputError: If the radii are not ordered 0 < a <= z <= b, a < b
    """
    _require_finite(z_radius=z_radius, a=a, b=b)
    if a <= 0 or b <= 0 or z_radius <= 0:
        raise InvalidInputError("Annulus radii must be positive")
    if a >= b:
        raise InvalidInputError(f"Inner radius {a} must be below outer radius {b}")
    if not a <= z_radius <= b:
        raise InvalidInputError(f"Start radius {z_radius} outside [{a}, {b}]")
    return _clamp(math.log(b / z_radius) / math.log(b / a))


def exit_below_prob(y: float, lo: float, hi: float) -> float:
    """Probability that 1D Brownian motion from ``y`` reaches ``lo`` before ``hi``."""
    _require_finite(y=y, lo=lo, hi=hi)
    if lo >= hi:
        raise InvalidInputError(f"Degenerate interval [{lo}, {hi}]")
    if not lo <= y <= hi:
        raise InvalidInputError(f"Start {y} outside [{lo}, {hi}]")
    return _clamp((hi - y) / (hi - lo))


def _radial_quad(center_dist: float, sigma: float, radius: float, limit: int) -> float:
    s2 = sigma * sigma

    # Rice density written with the exponentially scaled Bessel function so
    # that large rho*d/sigma^2 does not overflow.
    def integrand(rho: float) -> float:
        return (
            rho
            / s2
            * math.exp(-((rho - center_dist) ** 2) / (2.0 * s2))
            * special.i0e(rho * center_dist / s2)
        )

    points = [center_dist] if 0.0 < center_dist < radius else None
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        value, abserr = integrate.quad(
            integrand,
            0.0,
            radius,
            points=points,
            limit=limit,
            epsabs=QUAD_ABS_TOLERANCE / 100.0,
            epsrel=QUAD_ABS_TOLERANCE,
        )
    if not np.isfinite(value) or abserr > QUAD_ABS_TOLERANCE:
        logger.debug(
            "Quadrature for d=%s sigma=%s r=%s reached %s with limit %d",
            center_dist,
            sigma,
            radius,
            abserr,
            limit,
        )
        raise QuadratureError(
            f"Disk probability quadrature did not converge (error {abserr:.3g})",
            achieved_error=float(abserr),
        )
    return value


def gaussian_disk_prob(center_dist: float, sigma: float, radius: float) -> float:
    """
    Probability that an isotropic planar Gaussian lands inside a disk.

    The Gaussian has per-coordinate standard deviation ``sigma`` and its mean
    sits ``center_dist`` away from the disk center. The radial distance
    follows a Rice law, integrated over [0, radius] to an absolute error of
    1e-10. Failed integrations are retried with twice the subdivision limit.

    Raises:
        InvalidInputError: On negative distance or radius, or sigma <= 0
        QuadratureError: If the integral cannot reach the tolerance
    """
    _require_finite(center_dist=center_dist, sigma=sigma, radius=radius)
    if center_dist < 0 or radius < 0:
        raise InvalidInputError("Distance and radius must be nonnegative")
    if sigma <= 0:
        raise InvalidInputError(f"sigma must be positive, got {sigma}")
    if radius == 0:
        return 0.0

    for attempt in Retrying(
        stop=stop_after_attempt(MAX_RETRY_ATTEMPTS),
        retry=retry_if_exception_type(QuadratureError),
        reraise=True,
    ):
        with attempt:
            limit = QUAD_BASE_LIMIT * 2 ** (attempt.retry_state.attempt_number - 1)
            value = _radial_quad(center_dist, sigma, radius, limit)
    return _clamp(value)
