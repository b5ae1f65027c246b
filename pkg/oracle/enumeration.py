"""
Exhaustive enumeration over M(n, F): the ground truth every closed form is
checked against.

Matrices are visited in odometer order over the n^2 entry indices with the
bottom-right entry least significant, so the first row's index (entries
read left to right, most significant first) is a natural partition key.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Dict, Iterator, List, Optional, Tuple

from algebra.counts import TraceClass
from fields.gfq import ElementMismatch, FieldCtx, FieldElem
from fields.matrix import DimensionMismatch, KOutOfRange, MatGF, mat_rank, rank_of_rows

# Largest number of matrices a single enumeration may visit.
ORACLE_LIMIT = 2**28
# Per-worker tallies must stay within a machine word.
WORD_LIMIT = 2**63


class OracleError(Exception):
    """Base exception for enumeration errors."""

    pass


class TooLarge(OracleError, ValueError):
    """The enumeration would exceed the size guard."""

    def __init__(self, iterations: int, limit: int = ORACLE_LIMIT):
        self.iterations = iterations
        self.limit = limit
        super().__init__(
            f"size guard exceeded: {iterations} matrices > {limit}; "
            f"use the closed-form path (count/table) instead"
        )


def check_size(n: int, ctx: FieldCtx) -> int:
    """Number of n x n matrices over ctx, or TooLarge past the guard."""
    iterations = ctx.q ** (n * n)
    if iterations > ORACLE_LIMIT:
        raise TooLarge(iterations)
    return iterations


@dataclass
class CountTable:
    """Tally of matrices by (rank, trace element index).

    Every cell (r, a) for 0 <= r <= n and 0 <= a < q is present.
    """

    n: int
    k: int
    ctx: FieldCtx
    cells: Dict[Tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        for r in range(self.n + 1):
            for a in range(self.ctx.q):
                self.cells.setdefault((r, a), 0)

    def cell(self, r: int, alpha: int | FieldElem) -> int:
        if isinstance(alpha, FieldElem):
            alpha = alpha.index
        return self.cells[(r, alpha)]

    def class_count(self, r: int, alpha: TraceClass) -> int:
        """The cell for alpha = 0, or for alpha = 1 as the nonzero representative."""
        return self.cell(r, 0 if alpha is TraceClass.ZERO else 1)

    def row_total(self, r: int) -> int:
        return sum(self.cells[(r, a)] for a in range(self.ctx.q))

    def total(self) -> int:
        return sum(self.cells.values())

    def nonzero_cells_equal(self) -> bool:
        for r in range(self.n + 1):
            if len({self.cells[(r, a)] for a in range(1, self.ctx.q)}) > 1:
                return False
        return True

    def merge(self, other: "CountTable") -> "CountTable":
        if (self.n, self.k, self.ctx) != (other.n, other.k, other.ctx):
            raise OracleError("cannot merge tables of different shapes")
        merged = {key: value + other.cells[key] for key, value in self.cells.items()}
        return CountTable(self.n, self.k, self.ctx, merged)

    def rows(self) -> List[List[int]]:
        """Row r lists the cells for trace indices 0..q-1."""
        return [[self.cells[(r, a)] for a in range(self.ctx.q)] for r in range(self.n + 1)]

    def __eq__(self, other):
        if not isinstance(other, CountTable):
            return NotImplemented
        return (self.n, self.k, self.ctx.q, self.cells) == (
            other.n,
            other.k,
            other.ctx.q,
            other.cells,
        )


def iter_matrices(n: int, ctx: FieldCtx, start: int = 0, stop: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    """Entry tuples in odometer order, restricted to first-row indices in [start, stop)."""
    q = ctx.q
    stop = q**n if stop is None else stop
    if n == 0:
        if start == 0 and stop >= 1:
            yield ()
        return
    rest = n * n - n
    for first in range(start, stop):
        head = []
        value = first
        for _ in range(n):
            value, digit = divmod(value, q)
            head.append(digit)
        head.reverse()
        head = tuple(head)
        for tail in product(range(q), repeat=rest):
            yield head + tail


def tally_range(n: int, k: int, ctx: FieldCtx, start: int, stop: int) -> Dict[Tuple[int, int], int]:
    """Raw (rank, k-trace) tallies over a slice of first-row indices."""
    add = ctx.add
    tallies: Dict[Tuple[int, int], int] = {}
    diagonal = [i * n + i for i in range(k)]
    for entries in iter_matrices(n, ctx, start, stop):
        rows = [list(entries[i * n : (i + 1) * n]) for i in range(n)]
        r = rank_of_rows(rows, ctx)
        acc = 0
        for d in diagonal:
            acc = add(acc, entries[d])
        key = (r, acc)
        tallies[key] = tallies.get(key, 0) + 1
    for key, value in tallies.items():
        assert value < WORD_LIMIT, f"tally overflow at {key}"
    return tallies


def enumerate_counts(n: int, k: int, ctx: FieldCtx) -> CountTable:
    """|Y^a_{n,r,k}| for every r and every field element a, by brute force."""
    if n < 0:
        raise DimensionMismatch(f"n={n} must be >= 0")
    if not 0 <= k <= n:
        raise KOutOfRange(k, n)
    iterations = check_size(n, ctx)
    logging.debug(f"enumerate_counts n={n} k={k} over {ctx}: {iterations} matrices")
    tallies = tally_range(n, k, ctx, 0, ctx.q**n)
    return CountTable(n, k, ctx, dict(tallies))


def _trace_of_product(A: MatGF, entries: Tuple[int, ...]) -> int:
    """tr(AX) = sum_{i,j} A_ij X_ji."""
    ctx, n = A.ctx, A.n_rows
    acc = 0
    for i in range(n):
        for j in range(n):
            a = A.entries[i * n + j]
            if a:
                x = entries[j * n + i]
                if x:
                    acc = ctx.add(acc, ctx.mul(a, x))
    return acc


def z_count_table(A: MatGF) -> CountTable:
    """Cells (r, a) = |{X of rank r : tr(AX) = a}| for all r and a in one pass.

    The table's k is rank(A).
    """
    if not A.is_square:
        raise DimensionMismatch(f"A must be square, got {A.n_rows}x{A.n_cols}")
    n, ctx = A.n_rows, A.ctx
    iterations = check_size(n, ctx)
    logging.debug(f"z_count_table n={n} over {ctx}: {iterations} matrices")
    tallies: Dict[Tuple[int, int], int] = {}
    for entries in iter_matrices(n, ctx):
        rows = [list(entries[i * n : (i + 1) * n]) for i in range(n)]
        key = (rank_of_rows(rows, ctx), _trace_of_product(A, entries))
        tallies[key] = tallies.get(key, 0) + 1
    return CountTable(n, mat_rank(A), ctx, tallies)


def oracle_Z(A: MatGF, r: int, alpha: FieldElem) -> int:
    """|Z^alpha_{A,r}| by exhaustive iteration."""
    if alpha.ctx != A.ctx:
        raise ElementMismatch()
    if not 0 <= r <= A.n_rows:
        raise KOutOfRange(r, A.n_rows)
    return z_count_table(A).cell(r, alpha.index)


def count_subspaces(n: int, r: int, ctx: FieldCtx) -> int:
    """Number of r-dimensional subspaces of F^n, counted by listing every
    reduced row-echelon r x n matrix of rank r."""
    if not 0 <= r <= n:
        raise KOutOfRange(r, n)
    q = ctx.q
    total = 0
    for pivots in combinations(range(n), r):
        # free slots: right of the row's pivot, outside every pivot column
        free = [(i, j) for i, p in enumerate(pivots) for j in range(p + 1, n) if j not in pivots]
        if q ** len(free) > ORACLE_LIMIT:
            raise TooLarge(q ** len(free))
        for values in product(range(q), repeat=len(free)):
            rows = [[0] * n for _ in range(r)]
            for i, p in enumerate(pivots):
                rows[i][p] = 1
            for (i, j), v in zip(free, values):
                rows[i][j] = v
            if rank_of_rows(rows, ctx) == r:
                total += 1
    return total
