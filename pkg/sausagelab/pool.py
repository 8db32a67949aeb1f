# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Ordered fan-out of independent tasks over a thread pool."""

import logging
from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

T = TypeVar("T")
R = TypeVar("R")

logger = logging.getLogger(__name__)


def map_ordered(fn: Callable[[T], R], items: Iterable[T], workers: int = 1) -> list[R]:
    """
    Apply ``fn`` to every item and return results in item order.

    With one worker the items run sequentially in the calling thread. The
    first failing task cancels those not yet started and its exception
    propagates.
    """
    work = list(items)
    if workers <= 1 or len(work) <= 1:
        return [fn(item) for item in work]

    with ThreadPoolExecutor(max_workers=workers) as executor:
        futures = [executor.submit(fn, item) for item in work]
        results: list[R] = []
        try:
            for future in futures:
                results.append(future.result())
        except Exception:
            for pending in futures:
                pending.cancel()
            raise
    logger.debug("Completed %d tasks on %d workers", len(work), workers)
    return results
