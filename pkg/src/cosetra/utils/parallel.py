"""Order-preserving worker pool for the verifier loops."""

from __future__ import annotations

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

THREADS_ENV = "COSETRA_THREADS"


def resolve_workers(threads: int | None = None) -> int:
    """Worker count: explicit value, else COSETRA_THREADS, else min(8, cpu count)."""
    if threads is None:
        raw = os.environ.get(THREADS_ENV)
        if raw:
            try:
                threads = int(raw)
            except ValueError:
                logger.warning("ignoring non-integer %s=%r", THREADS_ENV, raw)
    if threads is None:
        threads = min(8, os.cpu_count() or 1)
    return max(1, threads)


def parallel_map(fn: Callable[[T], R], items: Iterable[T], workers: int | None = None) -> list[R]:
    """Map fn over items; results keep the input order regardless of scheduling."""
    seq = list(items)
    n = resolve_workers(workers)
    if n == 1 or len(seq) <= 1:
        return [fn(item) for item in seq]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, seq))
