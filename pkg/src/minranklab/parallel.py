"""Deterministic fan-out of partitioned work across processes.

Results always come back in chunk order, so callers merge them exactly as
they would in the sequential case and every value is schedule-independent.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def split_list(items: Sequence[T], parts: int) -> list[list[T]]:
    """Split into at most `parts` contiguous chunks of near-equal size."""
    parts = max(1, min(parts, len(items)))
    size, extra = divmod(len(items), parts)
    chunks = []
    start = 0
    for i in range(parts):
        stop = start + size + (1 if i < extra else 0)
        chunks.append(list(items[start:stop]))
        start = stop
    return chunks


def split_range(total: int, parts: int) -> list[tuple[int, int]]:
    """Partition range(total) into at most `parts` contiguous (start, stop) runs."""
    parts = max(1, min(parts, total)) if total else 1
    size, extra = divmod(total, parts)
    spans = []
    start = 0
    for i in range(parts):
        stop = start + size + (1 if i < extra else 0)
        spans.append((start, stop))
        start = stop
    return spans


def map_chunks(worker: Callable[[T], R], chunk_args: Sequence[T], jobs: int) -> list[R]:
    """Apply worker to each chunk argument, in order; jobs<=1 runs inline."""
    if jobs <= 1 or len(chunk_args) <= 1:
        return [worker(arg) for arg in chunk_args]
    with ProcessPoolExecutor(max_workers=min(jobs, len(chunk_args))) as pool:
        return list(pool.map(worker, chunk_args))
