from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def thread_count() -> int:
    """Worker cap from ESND_THREADS (0 or unset = one per CPU)."""
    raw = os.environ.get("ESND_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"ESND_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise ValueError(f"ESND_THREADS must be >= 0, got {n}")
    return n or os.cpu_count() or 1


def parallel_map(fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
    """Map in input order; results never depend on the worker count."""
    items = list(items)
    workers = min(thread_count(), len(items))
    if workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
