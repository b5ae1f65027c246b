"""
Enumeration split across worker processes. Each worker tallies a contiguous
range of first-row indices; the parent merges by addition, so the result
does not depend on the worker count or on scheduling.
"""

from __future__ import annotations

import logging
from multiprocessing import Pool
from typing import Dict, List, Tuple

from fields.gfq import FieldCtx
from fields.matrix import KOutOfRange
from oracle.enumeration import CountTable, OracleError, check_size, tally_range

Chunk = Tuple[int, int, int, int, Tuple[int, ...], int, int]


def split_range(total: int, parts: int) -> List[Tuple[int, int]]:
    """Cut range(total) into at most `parts` contiguous, non-empty slices."""
    parts = max(1, min(parts, total))
    size, extra = divmod(total, parts)
    out, start = [], 0
    for i in range(parts):
        stop = start + size + (1 if i < extra else 0)
        out.append((start, stop))
        start = stop
    return out


def _tally_chunk(chunk: Chunk) -> Dict[Tuple[int, int], int]:
    # top level so the pool can pickle it
    n, k, p, m, modulus, start, stop = chunk
    return tally_range(n, k, FieldCtx(p, m, modulus), start, stop)


def partitioned_enumerate(n: int, k: int, ctx: FieldCtx, workers: int = 1) -> CountTable:
    """Same table as enumerate_counts, computed by `workers` processes."""
    if workers < 1:
        raise OracleError(f"workers={workers} must be >= 1")
    if not 0 <= k <= n:
        raise KOutOfRange(k, n)
    check_size(n, ctx)
    ranges = split_range(ctx.q**n, workers)
    chunks: List[Chunk] = [(n, k, ctx.p, ctx.m, ctx.modulus, a, b) for a, b in ranges]
    logging.debug(f"partitioned_enumerate n={n} k={k} over {ctx}: {len(chunks)} chunks, {workers} workers")

    if workers == 1:
        parts = [_tally_chunk(c) for c in chunks]
    else:
        with Pool(processes=min(workers, len(chunks))) as pool:
            parts = pool.map(_tally_chunk, chunks)

    table = CountTable(n, k, ctx)
    for part in parts:
        table = table.merge(CountTable(n, k, ctx, dict(part)))
    return table
