"""
Closed-form counts f^a_{n,r,k} = |Y^a_{n,r,k}|: n x n matrices of rank r
whose k-trace (sum of the first k diagonal entries) equals a.

g_count is the difference f^0 - f^1; f_count recovers both classes from it
and a(n, r, q). prasad_diff, k_minus_1_diff and full_rank_diff are
independent special-case formulas kept as cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, auto
from typing import TYPE_CHECKING, List, Optional

from algebra.qanalogs import (
    CountingError,
    InvalidParameter,
    QLike,
    QParam,
    binom2,
    exact_div,
    gauss_binom,
    order_of,
    prime_power,
    rank_count,
)

if TYPE_CHECKING:
    from fields.gfq import FieldElem
    from fields.matrix import MatGF


class NegativeCount(CountingError):
    """A closed form produced a negative count; the formula, not the input, is wrong."""

    def __init__(self, value: int, query: "CountQuery"):
        self.value = value
        self.query = query
        super().__init__(f"negative count {value} for {query}")


class TraceClass(Enum):
    """Only whether a trace value is zero matters for counting."""

    ZERO = auto()
    NONZERO = auto()

    @classmethod
    def of(cls, alpha: "FieldElem") -> "TraceClass":
        return cls.ZERO if alpha.is_zero() else cls.NONZERO

    @classmethod
    def parse(cls, text: str) -> "TraceClass":
        """Accepts 0/zero and 1/nonzero (case-insensitive)."""
        key = str(text).strip().lower()
        if key in {"0", "zero"}:
            return cls.ZERO
        if key in {"1", "nonzero"}:
            return cls.NONZERO
        raise InvalidParameter(f"alpha class must be 0, 1, zero or nonzero; got {text!r}")

    @property
    def label(self) -> str:
        return self.name.lower()


@dataclass(frozen=True)
class CountQuery:
    n: int
    r: int
    k: int
    q: QLike
    alpha: TraceClass

    def __post_init__(self):
        order_of(self.q)
        if not isinstance(self.n, int) or self.n < 0:
            raise InvalidParameter(f"n={self.n!r} must be a non-negative integer")
        if not isinstance(self.r, int) or not (0 <= self.r <= self.n):
            raise InvalidParameter(f"need 0 <= r <= n, got r={self.r}, n={self.n}")
        if not isinstance(self.k, int) or not (0 <= self.k <= self.n):
            raise InvalidParameter(f"need 0 <= k <= n, got k={self.k}, n={self.n}")
        if not isinstance(self.alpha, TraceClass):
            raise InvalidParameter(f"alpha must be a TraceClass, got {self.alpha!r}")

    @property
    def order(self) -> int:
        return order_of(self.q)

    @property
    def qparam(self) -> Optional[QParam]:
        if isinstance(self.q, QParam):
            return self.q
        return prime_power(self.q)


def _check_rnk(n: int, r: int, k: int) -> None:
    if not (0 <= r <= n and 0 <= k <= n):
        raise InvalidParameter(f"need 0 <= r, k <= n; got n={n}, r={r}, k={k}")


def g_count(n: int, r: int, k: int, q: QLike) -> int:
    """g_{n,r,k} = sum_i (-1)^i q^{binom2(i) + k(r-i)} [k i]_q a(n-k, r-i, q)."""
    _check_rnk(n, r, k)
    qv = order_of(q)
    total = 0
    for i in range(r + 1):
        # [k i] = 0 for i > k, a(n-k, r-i) = 0 for r-i > n-k
        term = gauss_binom(k, i, qv) * rank_count(n - k, r - i, qv)
        if term:
            total += (-1) ** i * qv ** (binom2(i) + k * (r - i)) * term
    return total


def f_count(query: CountQuery) -> int:
    """|Y^a_{n,r,k}| for the trace class of a."""
    qv = query.order
    a = rank_count(query.n, query.r, qv)
    g = g_count(query.n, query.r, query.k, qv)
    nonzero = exact_div(a - g, qv, f"f_count{(query.n, query.r, query.k, qv)}")
    if query.alpha is TraceClass.NONZERO:
        result = nonzero
    else:
        result = a - (qv - 1) * nonzero
    if result < 0:
        raise NegativeCount(result, query)
    return result


def f_row(n: int, k: int, q: QLike, alpha: TraceClass) -> List[int]:
    """f_count for r = 0..n."""
    return [f_count(CountQuery(n=n, r=r, k=k, q=q, alpha=alpha)) for r in range(n + 1)]


def prasad_diff(k: int, r: int, q: QLike) -> int:
    """f^0_{k,r,k} - f^1_{k,r,k} = (-1)^r q^{binom2(r)} [k r]_q."""
    _check_rnk(k, r, k)
    qv = order_of(q)
    return (-1) ** r * qv ** binom2(r) * gauss_binom(k, r, qv)


def k_minus_1_diff(k: int, r: int, q: QLike) -> int:
    """f^0 - f^1 for n = k + 1 and r <= k, by the closed form

    (-1)^r q^{binom2(r)} [k, k-r]_q ((q^{k-r+2}-1) + q^{k+1}(1-q)) / (q^{k+1-r}-1).

    The division is applied to the whole product; the bracket alone is not
    always divisible.
    """
    if not (0 <= r <= k):
        raise InvalidParameter(f"need 0 <= r <= k, got r={r}, k={k}")
    qv = order_of(q)
    bracket = (qv ** (k - r + 2) - 1) + qv ** (k + 1) * (1 - qv)
    numerator = (-1) ** r * qv ** binom2(r) * gauss_binom(k, k - r, qv) * bracket
    return exact_div(numerator, qv ** (k + 1 - r) - 1, f"k_minus_1_diff({k},{r},{qv})")


def full_rank_diff(k: int, q: QLike) -> int:
    """f^0 - f^1 for n = r = k + 1: (-1)^k q^{binom2(k+1)} (q - 1)."""
    if k < 0:
        raise InvalidParameter(f"k={k} must be >= 0")
    qv = order_of(q)
    return (-1) ** k * qv ** binom2(k + 1) * (qv - 1)


def next_row_k_plus_1(row: List[int], k: int, q: QLike) -> List[int]:
    """From (f_{k,r,k})_r to (f_{k+1,r,k})_r by splitting X = [[D, v], [w, x]]
    on the rank of the leading k x k block D (r, r-1 or r-2).
    """
    qv = order_of(q)

    def at(i: int) -> int:
        return row[i] if 0 <= i < len(row) else 0

    out = []
    for r in range(k + 2):
        value = qv ** (2 * r) * at(r)
        if r >= 1:
            same_span = qv ** (r - 1) * (qv ** (k + 1) - qv ** (r - 1))
            new_span = qv**r * (qv**k - qv ** (r - 1))
            value += at(r - 1) * (same_span + new_span)
        if r >= 2:
            value += at(r - 2) * (qv**k - qv ** (r - 2)) * (qv ** (k + 1) - qv ** (r - 1))
        out.append(value)
    return out


def count_Z(A: "MatGF", r: int, alpha: "FieldElem") -> int:
    """|{X of rank r : tr(AX) = alpha}|, which depends on A only via rank(A)."""
    from fields.gfq import ElementMismatch  # local import
    from fields.matrix import DimensionMismatch, mat_rank

    if A.n_rows != A.n_cols:
        raise DimensionMismatch(f"A must be square, got {A.n_rows}x{A.n_cols}")
    if alpha.ctx != A.ctx:
        raise ElementMismatch()
    n = A.n_rows
    if not (0 <= r <= n):
        raise InvalidParameter(f"need 0 <= r <= n, got r={r}, n={n}")
    k = mat_rank(A)
    query = CountQuery(n=n, r=r, k=k, q=A.ctx.q, alpha=TraceClass.of(alpha))
    return f_count(query)
