"""Range partitioning and order-fixed reductions.

Chunk boundaries depend only on the range being processed, never on the
worker count, and partial results are merged in a fixed tree order. A run
with one worker and a run with eight therefore produce identical floats.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

from . import config

CHUNK = 1 << 16


def chunks(lo: int, hi: int, size: int = CHUNK) -> list[tuple[int, int]]:
    """Split the half-open range [lo, hi) into consecutive pieces."""
    if hi <= lo:
        return []
    return [(start, min(start + size, hi)) for start in range(lo, hi, size)]


def pmap(fn, items, workers: int | None = None) -> list:
    """Ordered map; threads are used because the kernels release the GIL."""
    items = list(items)
    if workers is None:
        workers = config.current().worker_count
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(fn, items))


def pairwise_sum(values):
    """Sum a sequence of floats (or complex) by a balanced binary tree."""
    values = list(values)
    if not values:
        return 0.0
    while len(values) > 1:
        merged = [values[i] + values[i + 1] for i in range(0, len(values) - 1, 2)]
        if len(values) % 2:
            merged.append(values[-1])
        values = merged
    return values[0]
