"""Chunked (optionally threaded) scans over index tuples.

A check is expressed as ``mask_fn(lo, hi)`` returning a boolean array of
violations whose first axis covers indices ``lo..hi-1``.  Chunks are
merged in index order, so the reported witness is the lexicographically
first violation regardless of how many threads ran.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

_THREADS: int | None = None
_CHUNK_ELEMENTS = 1 << 20


def set_threads(n: int | None) -> None:
    global _THREADS
    if n is not None and n < 1:
        raise ValueError("threads must be >= 1")
    _THREADS = n


def get_threads() -> int:
    return _THREADS or os.cpu_count() or 1


def scan(first: int, rest: int, mask_fn) -> tuple[int, tuple[int, ...] | None]:
    """Count violations and return the first one.

    ``first`` is the extent of the leading axis, ``rest`` the number of
    elements per leading index (used only to size chunks).
    """
    if first == 0:
        return 0, None
    step = max(1, _CHUNK_ELEMENTS // max(rest, 1))
    bounds = [(lo, min(lo + step, first)) for lo in range(0, first, step)]

    def run(b):
        lo, hi = b
        mask = np.asarray(mask_fn(lo, hi), dtype=bool)
        cnt = int(mask.sum())
        if not cnt:
            return 0, None
        idx = np.argwhere(mask)[0]
        return cnt, (int(idx[0]) + lo,) + tuple(int(i) for i in idx[1:])

    threads = get_threads()
    if threads > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, bounds))
    else:
        results = [run(b) for b in bounds]
    total = sum(c for c, _ in results)
    witness = next((w for _, w in results if w is not None), None)
    return total, witness
