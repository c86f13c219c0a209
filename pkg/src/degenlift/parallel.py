"""Optional process parallelism with order-preserving results.

The worker count comes from DEGENLIFT_THREADS (default 1, i.e. serial).
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor

__all__ = ["worker_count", "parallel_map"]


def worker_count():
    raw = os.environ.get("DEGENLIFT_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"DEGENLIFT_THREADS must be an integer, got {raw!r}") from None
    return max(1, min(n, os.cpu_count() or 1))


def parallel_map(fn, items):
    """[fn(x) for x in items], spread over worker processes when allowed."""
    items = list(items)
    n = worker_count()
    if n <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(n, len(items))) as pool:
        return list(pool.map(fn, items))
