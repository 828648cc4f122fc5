"""Optional thread fan-out for embarrassingly parallel sweeps.

SECRECY_REGION_THREADS caps the worker count (default 1 = serial).
Results always come back in input order, so parallel and serial runs
produce identical output.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")

ENV_THREADS = "SECRECY_REGION_THREADS"


def max_workers() -> int:
    raw = os.environ.get(ENV_THREADS, "")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(n, 1)


def thread_map(fn: Callable[[T], R], items: Sequence[T]) -> list[R]:
    """Map preserving order, threaded when the env cap allows it."""
    workers = max_workers()
    if workers <= 1 or len(items) < 4:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
