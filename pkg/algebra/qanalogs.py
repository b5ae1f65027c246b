"""
Exact q-combinatorics: Gaussian binomials, q-Pochhammer polynomials,
|GL(r, F_q)| and the rank counts a(n, r, q).

Every function takes q either as a plain integer >= 2 or as a QParam.
Nothing here ever rounds; divisions that a theorem guarantees go through
exact_div and fail loudly otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional, Union

if TYPE_CHECKING:
    from algebra.polyring import PolyZ


class CountingError(Exception):
    """Base exception for counting and q-arithmetic errors."""

    pass


class InvalidParameter(CountingError, ValueError):
    """Raised when an argument violates an operation's precondition."""

    pass


class DivisionInexact(CountingError):
    """Raised when a division that must be exact leaves a remainder."""

    def __init__(self, numerator: int, denominator: int, where: str = ""):
        self.numerator = numerator
        self.denominator = denominator
        self.where = where
        detail = f" in {where}" if where else ""
        super().__init__(
            f"Inexact division{detail}: {numerator} / {denominator} "
            f"leaves remainder {numerator % denominator if denominator else 'n/a'}"
        )


def is_prime(p: int) -> bool:
    """Trial-division primality test."""
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class QParam:
    """The order q = p^m of a finite field, with p checked prime."""

    p: int
    m: int = 1

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise InvalidParameter(f"p={self.p} is not prime")
        if not isinstance(self.m, int) or self.m < 1:
            raise InvalidParameter(f"m={self.m} must be an integer >= 1")

    @property
    def q(self) -> int:
        return self.p**self.m

    @classmethod
    def of(cls, q: int) -> "QParam":
        """Decompose a prime power q into (p, m)."""
        found = prime_power(q)
        if found is None:
            raise InvalidParameter(f"q={q} is not a prime power")
        return found

    def __int__(self):
        return self.q

    def __str__(self):
        return f"{self.q}" if self.m == 1 else f"{self.p}^{self.m}"


QLike = Union[int, QParam]


def prime_power(q: int) -> Optional[QParam]:
    """Return QParam(p, m) when q = p^m for a prime p, otherwise None."""
    if not isinstance(q, int) or q < 2:
        return None
    p = 2 if q % 2 == 0 else 3
    while p * p <= q and q % p:
        p += 2
    if q % p:
        # no factor up to sqrt(q): q itself is prime
        return QParam(q, 1)
    m, rest = 0, q
    while rest % p == 0:
        rest //= p
        m += 1
    return QParam(p, m) if rest == 1 else None


def order_of(q: QLike) -> int:
    """Return the integer value of q, accepting an int >= 2 or a QParam."""
    if isinstance(q, QParam):
        return q.q
    if isinstance(q, bool) or not isinstance(q, int):
        raise InvalidParameter(f"q must be an integer or QParam, got {q!r}")
    if q < 2:
        raise InvalidParameter(f"q={q} must be >= 2")
    return q


def _check_nonnegative(**values: int) -> None:
    for name, value in values.items():
        if not isinstance(value, int) or value < 0:
            raise InvalidParameter(f"{name}={value!r} must be a non-negative integer")


def exact_div(numerator: int, denominator: int, where: str = "") -> int:
    """Divide exactly or raise DivisionInexact."""
    if denominator == 0:
        raise DivisionInexact(numerator, denominator, where)
    quotient, remainder = divmod(numerator, denominator)
    if remainder:
        raise DivisionInexact(numerator, denominator, where)
    return quotient


def binom2(m: int) -> int:
    """m choose 2, with binom2(0) = binom2(1) = 0."""
    _check_nonnegative(m=m)
    return m * (m - 1) // 2


def gauss_binom(n: int, r: int, q: QLike) -> int:
    """Gaussian binomial [n r]_q; 0 when r > n."""
    _check_nonnegative(n=n, r=r)
    qv = order_of(q)
    if r > n:
        return 0
    numerator = 1
    denominator = 1
    for i in range(r):
        numerator *= qv ** (n - i) - 1
        denominator *= qv ** (r - i) - 1
    return exact_div(numerator, denominator, f"gauss_binom({n},{r},{qv})")


def q_pochhammer_poly(n: int, q: QLike) -> "PolyZ":
    """Expanded (X;q)_n = (1-X)(1-qX)...(1-q^{n-1}X)."""
    from algebra.polyring import PolyZ  # local import to avoid circulars

    _check_nonnegative(n=n)
    qv = order_of(q)
    result = PolyZ.one()
    for i in range(n):
        result = result * PolyZ((1, -(qv**i)))
    return result


def q_binomial_expand(n: int, q: QLike) -> "PolyZ":
    """The right-hand side of the q-binomial theorem as a polynomial:
    sum_r [n r]_q (-1)^r q^{binom2(r)} X^r.
    """
    from algebra.polyring import PolyZ  # local import to avoid circulars

    _check_nonnegative(n=n)
    qv = order_of(q)
    return PolyZ(
        (-1) ** r * qv ** binom2(r) * gauss_binom(n, r, qv) for r in range(n + 1)
    )


def gl_order(r: int, q: QLike) -> int:
    """|GL(r, F_q)| = prod_{i<r} (q^r - q^i)."""
    _check_nonnegative(r=r)
    qv = order_of(q)
    result = 1
    for i in range(r):
        result *= qv**r - qv**i
    return result


def rank_count(n: int, r: int, q: QLike) -> int:
    """a(n, r, q): the number of n x n matrices of rank r over F_q."""
    _check_nonnegative(n=n, r=r)
    qv = order_of(q)
    if r > n:
        return 0
    return gauss_binom(n, r, qv) ** 2 * gl_order(r, qv)


def rank_count_product(n: int, r: int, q: QLike) -> int:
    """a(n, r, q) from the product prod_{i<r} (q^n - q^i)^2 / (q^r - q^i).

    Independent of rank_count; the two must agree.
    """
    _check_nonnegative(n=n, r=r)
    qv = order_of(q)
    if r > n:
        return 0
    numerator = 1
    denominator = 1
    for i in range(r):
        numerator *= (qv**n - qv**i) ** 2
        denominator *= qv**r - qv**i
    return exact_div(numerator, denominator, f"rank_count_product({n},{r},{qv})")


def matrix_count(n: int, q: QLike) -> int:
    """a(n, q) = q^{n^2}, the size of M(n, F_q)."""
    _check_nonnegative(n=n)
    return order_of(q) ** (n * n)
