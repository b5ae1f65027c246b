"""
Dense matrices over a FieldCtx: rank, k-trace, the canonical rank-k matrix
B = diag(I_k, 0), and random matrices of prescribed rank.

Entries are stored as element indices (see fields.gfq) in row-major order.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from fields.gfq import FieldCtx, FieldElem, FieldError

MAX_DRAWS = 1000


class MatrixError(FieldError):
    """Base exception for matrix errors."""

    pass


class DimensionMismatch(MatrixError, ValueError):
    """Shapes do not fit the operation."""

    pass


class KOutOfRange(MatrixError, ValueError):
    """A rank or k-trace index outside [0, n]."""

    def __init__(self, k: int, n: int):
        self.k = k
        self.n = n
        super().__init__(f"k={k} outside [0, {n}]")


class SingularMatrix(MatrixError, ValueError):
    """Inverting a matrix of rank below n."""

    pass


class RngExhausted(MatrixError, RuntimeError):
    """Rejection sampling found no invertible matrix."""

    def __init__(self, draws: int):
        self.draws = draws
        super().__init__(f"no invertible matrix after {draws} draws")


@dataclass(frozen=True)
class MatGF:
    ctx: FieldCtx
    n_rows: int
    n_cols: int
    entries: Tuple[int, ...]

    def __post_init__(self):
        if self.n_rows < 0 or self.n_cols < 0:
            raise DimensionMismatch("matrix dimensions must be non-negative")
        if len(self.entries) != self.n_rows * self.n_cols:
            raise DimensionMismatch(
                f"{len(self.entries)} entries for a {self.n_rows}x{self.n_cols} matrix"
            )
        q = self.ctx.q
        for e in self.entries:
            if not 0 <= e < q:
                raise MatrixError(f"entry index {e} outside [0, {q})")

    @classmethod
    def from_rows(cls, ctx: FieldCtx, rows: Sequence[Sequence[int]]) -> "MatGF":
        """Build from rows of element indices."""
        n_rows = len(rows)
        n_cols = len(rows[0]) if rows else 0
        if any(len(row) != n_cols for row in rows):
            raise DimensionMismatch("ragged rows")
        return cls(ctx, n_rows, n_cols, tuple(int(e) for row in rows for e in row))

    @classmethod
    def zeros(cls, ctx: FieldCtx, n: int, n_cols: int | None = None) -> "MatGF":
        n_cols = n if n_cols is None else n_cols
        return cls(ctx, n, n_cols, (0,) * (n * n_cols))

    @classmethod
    def identity(cls, ctx: FieldCtx, n: int) -> "MatGF":
        return cls(ctx, n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @property
    def is_square(self) -> bool:
        return self.n_rows == self.n_cols

    def is_zero(self) -> bool:
        return not any(self.entries)

    def index(self, i: int, j: int) -> int:
        return self.entries[i * self.n_cols + j]

    def entry(self, i: int, j: int) -> FieldElem:
        return self.ctx.elem(self.index(i, j))

    def rows(self) -> List[List[int]]:
        c = self.n_cols
        return [list(self.entries[i * c : (i + 1) * c]) for i in range(self.n_rows)]

    def __matmul__(self, other: "MatGF") -> "MatGF":
        return mat_mul(self, other)

    def __str__(self):
        return "\n".join(" ".join(str(e) for e in row) for row in self.rows())


def rank_of_rows(rows: List[List[int]], ctx: FieldCtx) -> int:
    """Rank by Gaussian elimination; rows are modified in place."""
    if not rows:
        return 0
    n_rows, n_cols = len(rows), len(rows[0])
    add, mul, neg, inv = ctx.add, ctx.mul, ctx.neg, ctx.inv
    rank = 0
    for col in range(n_cols):
        if rank == n_rows:
            break
        pivot = rank
        while pivot < n_rows and rows[pivot][col] == 0:
            pivot += 1
        if pivot == n_rows:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        prow = rows[rank]
        scale = inv(prow[col])
        for i in range(rank + 1, n_rows):
            lead = rows[i][col]
            if lead:
                factor = neg(mul(lead, scale))
                row = rows[i]
                for j in range(col, n_cols):
                    if prow[j]:
                        row[j] = add(row[j], mul(factor, prow[j]))
        rank += 1
    return rank


def mat_rank(M: MatGF) -> int:
    return rank_of_rows(M.rows(), M.ctx)


def k_trace(M: MatGF, k: int) -> FieldElem:
    """Sum of the first k diagonal entries; zero for k = 0."""
    if not M.is_square:
        raise DimensionMismatch(f"k_trace needs a square matrix, got {M.n_rows}x{M.n_cols}")
    if not 0 <= k <= M.n_rows:
        raise KOutOfRange(k, M.n_rows)
    ctx = M.ctx
    acc = 0
    for i in range(k):
        acc = ctx.add(acc, M.index(i, i))
    return ctx.elem(acc)


def trace(M: MatGF) -> FieldElem:
    return k_trace(M, M.n_rows)


def canonical_B(n: int, k: int, ctx: FieldCtx) -> MatGF:
    """diag(I_k, 0), the n x n orbit representative of rank k."""
    if not 0 <= k <= n:
        raise KOutOfRange(k, n)
    return MatGF(ctx, n, n, tuple(1 if i == j and i < k else 0 for i in range(n) for j in range(n)))


def mat_mul(A: MatGF, B: MatGF) -> MatGF:
    if A.ctx != B.ctx:
        raise DimensionMismatch("matrices over different fields")
    if A.n_cols != B.n_rows:
        raise DimensionMismatch(f"cannot multiply {A.n_rows}x{A.n_cols} by {B.n_rows}x{B.n_cols}")
    ctx = A.ctx
    out = []
    for i in range(A.n_rows):
        for j in range(B.n_cols):
            acc = 0
            for t in range(A.n_cols):
                a = A.index(i, t)
                if a:
                    b = B.index(t, j)
                    if b:
                        acc = ctx.add(acc, ctx.mul(a, b))
            out.append(acc)
    return MatGF(ctx, A.n_rows, B.n_cols, tuple(out))


def mat_inverse(M: MatGF) -> MatGF:
    """Gauss-Jordan inverse; raises SingularMatrix."""
    if not M.is_square:
        raise DimensionMismatch("only square matrices have inverses")
    ctx, n = M.ctx, M.n_rows
    rows = [row + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(M.rows())]
    for col in range(n):
        pivot = next((i for i in range(col, n) if rows[i][col]), None)
        if pivot is None:
            raise SingularMatrix("matrix is singular")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        scale = ctx.inv(rows[col][col])
        rows[col] = [ctx.mul(scale, e) for e in rows[col]]
        for i in range(n):
            lead = rows[i][col]
            if i != col and lead:
                factor = ctx.neg(lead)
                rows[i] = [ctx.add(a, ctx.mul(factor, b)) for a, b in zip(rows[i], rows[col])]
    return MatGF.from_rows(ctx, [row[n:] for row in rows])


def random_matrix(n: int, ctx: FieldCtx, rng: random.Random, n_cols: int | None = None) -> MatGF:
    n_cols = n if n_cols is None else n_cols
    return MatGF(ctx, n, n_cols, tuple(rng.randrange(ctx.q) for _ in range(n * n_cols)))


def random_invertible(n: int, ctx: FieldCtx, rng: random.Random) -> MatGF:
    """Uniform on GL(n, F) by rejection; gives up after MAX_DRAWS draws."""
    for draw in range(1, MAX_DRAWS + 1):
        candidate = random_matrix(n, ctx, rng)
        if mat_rank(candidate) == n:
            if draw > 1:
                logging.debug(f"random_invertible: accepted after {draw} draws")
            return candidate
    raise RngExhausted(MAX_DRAWS)


def random_rank_k(n: int, k: int, ctx: FieldCtx, rng: random.Random) -> MatGF:
    """g1^{-1} B g2 for independent uniform g1, g2 in GL(n, F); rank exactly k."""
    if not 0 <= k <= n:
        raise KOutOfRange(k, n)
    B = canonical_B(n, k, ctx)
    if k == 0:
        return B
    g1 = random_invertible(n, ctx, rng)
    g2 = random_invertible(n, ctx, rng)
    return mat_inverse(g1) @ B @ g2
