# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Coverage bound curves and the tail bounds used alongside them."""

import math
from dataclasses import dataclass
from typing import NamedTuple

from sausagelab.constants import DEFAULT_BOUND_CONSTANT
from sausagelab.exceptions import InvalidInputError


@dataclass(frozen=True)
class BoundParams:
    """The four positive constants of the coverage bounds."""

    c1: float = DEFAULT_BOUND_CONSTANT
    c2: float = DEFAULT_BOUND_CONSTANT
    c3: float = DEFAULT_BOUND_CONSTANT
    c4: float = DEFAULT_BOUND_CONSTANT

    def __post_init__(self):
        for name in ("c1", "c2", "c3", "c4"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise InvalidInputError(f"{name} must be positive, got {value}")


class BoundValues(NamedTuple):
    """Upper and lower curves for full coverage and for covered measure."""

    upper: float
    lower: float
    upper_measure: float
    lower_measure: float

    @property
    def ordered(self) -> bool:
        """False when a parameter set puts a lower curve above its upper one."""
        return self.upper >= self.lower and self.upper_measure >= self.lower_measure


def _log_curves(scale: float, theta: float, params: BoundParams) -> BoundValues:
    loglog = math.log(scale)
    theta_term = (1.0 - theta) / 3.0
    if theta_term > 0:
        log_lower_measure = -params.c4 * math.log(theta_term) ** 2 * scale**2
    else:
        log_lower_measure = -math.inf
    return BoundValues(
        upper=math.log(params.c1) - scale**2 / (params.c2 * loglog**2),
        lower=-params.c4 * scale**4,
        upper_measure=-(scale**2) * theta**2 / (params.c3 * loglog**2),
        lower_measure=log_lower_measure,
    )


def _check_theta(theta: float) -> None:
    if not 0 < theta <= 1:
        raise InvalidInputError(f"theta must lie in (0, 1], got {theta}")


def theorem1_log_bounds(
    epsilon: float, theta: float, params: BoundParams | None = None
) -> BoundValues:
    """Natural logarithms of the four coverage curves at sausage radius epsilon.

    With L = |log epsilon| the curves are log c1 - L^2/(c2 log^2 L),
    -c4 L^4, -L^2 theta^2/(c3 log^2 L) and -c4 |log((1-theta)/3)|^2 L^2.
    """
    params = params or BoundParams()
    if not 0 < epsilon < math.exp(-1):
        raise InvalidInputError(
            f"epsilon must lie in (0, 1/e) for the bound curves, got {epsilon}"
        )
    _check_theta(theta)
    return _log_curves(abs(math.log(epsilon)), theta, params)


def theorem1_bounds(
    epsilon: float, theta: float, params: BoundParams | None = None
) -> BoundValues:
    log_values = theorem1_log_bounds(epsilon, theta, params)
    return BoundValues(*(math.exp(v) for v in log_values))


def remark1_bounds(
    n_sites: int, theta: float, params: BoundParams | None = None
) -> BoundValues:
    """Curves for the lattice walk of n_sites^2 steps.

    log N takes the place of |log epsilon|.
    """
    params = params or BoundParams()
    if n_sites < 3:
        raise InvalidInputError(f"Lattice bounds need n_sites >= 3, got {n_sites}")
    _check_theta(theta)
    log_values = _log_curves(math.log(n_sites), theta, params)
    return BoundValues(*(math.exp(v) for v in log_values))


def azuma_tail_bound(u: float, m0: float, qv_limit: float, p_exceed: float) -> float:
    """Tail bound for a continuous martingale with quadratic variation budget.

    P[M_t >= u] <= exp(-(u - M_0)^2 / 2L) + P[<M>_t > L], valid for u > M_0.
    """
    if qv_limit <= 0:
        raise InvalidInputError(
            f"Quadratic variation budget must be positive: {qv_limit}"
        )
    if not 0 <= p_exceed <= 1:
        raise InvalidInputError(f"p_exceed must be a probability: {p_exceed}")
    if u <= m0:
        return 1.0
    return min(1.0, math.exp(-((u - m0) ** 2) / (2.0 * qv_limit)) + p_exceed)


def local_time_tail_bound(u: float, c8: float) -> float:
    """c8 exp(-u^2 / 2 c8), capped at one."""
    if c8 <= 0:
        raise InvalidInputError(f"c8 must be positive, got {c8}")
    return min(1.0, c8 * math.exp(-(u * u) / (2.0 * c8)))


def qv_budget(epsilon: float, c0: float) -> float:
    """Quadratic variation budget c0 |log eps|^-2 * 2 (log|2 log eps|)^2."""
    if not 0 < epsilon < 1:
        raise InvalidInputError(f"epsilon must lie in (0, 1), got {epsilon}")
    if c0 <= 0:
        raise InvalidInputError(f"c0 must be positive, got {c0}")
    log_eps = abs(math.log(epsilon))
    return c0 * log_eps**-2 * 2.0 * math.log(2.0 * log_eps) ** 2
