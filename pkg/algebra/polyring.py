"""
Dense univariate polynomials with integer coefficients, and the generating
functions built from them:

    A_n(X)       = sum_r a(n, r, q) X^r
    g_{n,k}(X)   = sum_r g_{n,r,k} X^r  = (X;q)_k A_{n-k}(q^k X)
    f^a_{n,k}(X) = sum_r f^a_{n,r,k} X^r

All three obey one three-term recurrence in n (see recurrence_step).
"""

from __future__ import annotations

import logging
from itertools import zip_longest
from typing import Iterable, List, Tuple

from algebra.qanalogs import (
    DivisionInexact,
    InvalidParameter,
    QLike,
    order_of,
    q_pochhammer_poly,
    rank_count,
)
from algebra.counts import TraceClass, CountQuery, f_count

# Integer prime powers used to check identities that hold for indeterminate q.
IDENTITY_Q_VALUES = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25)


class PolyZ:
    """Immutable polynomial; coeffs[i] is the coefficient of X^i.

    Trailing zeros are stripped, so the zero polynomial has no coefficients
    and degree -1 (standing in for minus infinity).
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "_coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("PolyZ is immutable")

    @classmethod
    def zero(cls) -> "PolyZ":
        return cls(())

    @classmethod
    def one(cls) -> "PolyZ":
        return cls((1,))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "PolyZ":
        return cls([0] * degree + [coeff])

    @property
    def coeffs(self) -> Tuple[int, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    def is_zero(self) -> bool:
        return not self._coeffs

    def coeff(self, i: int) -> int:
        return self._coeffs[i] if 0 <= i < len(self._coeffs) else 0

    def evaluate(self, x: int) -> int:
        acc = 0
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "PolyZ") -> "PolyZ":
        return poly_add(self, other)

    def __sub__(self, other: "PolyZ") -> "PolyZ":
        return poly_sub(self, other)

    def __neg__(self) -> "PolyZ":
        return PolyZ(-c for c in self._coeffs)

    def __mul__(self, other) -> "PolyZ":
        if isinstance(other, int):
            return PolyZ(c * other for c in self._coeffs)
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, PolyZ):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def __iter__(self):
        return iter(self._coeffs)

    def __len__(self):
        return len(self._coeffs)

    def __repr__(self):
        return f"PolyZ({list(self._coeffs)})"

    def __str__(self):
        if not self._coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self._coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = f"{mag}"
            else:
                power = "X" if i == 1 else f"X^{i}"
                body = power if mag == 1 else f"{mag}{power}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def poly_add(a: PolyZ, b: PolyZ) -> PolyZ:
    return PolyZ(x + y for x, y in zip_longest(a.coeffs, b.coeffs, fillvalue=0))


def poly_sub(a: PolyZ, b: PolyZ) -> PolyZ:
    return PolyZ(x - y for x, y in zip_longest(a.coeffs, b.coeffs, fillvalue=0))


def poly_mul(a: PolyZ, b: PolyZ) -> PolyZ:
    if a.is_zero() or b.is_zero():
        return PolyZ.zero()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a.coeffs):
        if x == 0:
            continue
        for j, y in enumerate(b.coeffs):
            out[i + j] += x * y
    return PolyZ(out)


def poly_scale_arg(a: PolyZ, c: int) -> PolyZ:
    """P(X) -> P(cX): coefficient i is multiplied by c^i."""
    return PolyZ(coef * c**i for i, coef in enumerate(a.coeffs))


def poly_divexact(a: PolyZ, b: PolyZ) -> PolyZ:
    """Quotient a / b over the integers; the remainder must be zero."""
    if b.is_zero():
        raise DivisionInexact(0, 0, "poly_divexact by the zero polynomial")
    rem = list(a.coeffs)
    lead = b.coeffs[-1]
    db = b.degree
    if len(rem) - 1 < db:
        if rem:
            raise DivisionInexact(a.evaluate(2), b.evaluate(2), "poly_divexact")
        return PolyZ.zero()
    quot = [0] * (len(rem) - db)
    for shift in range(len(rem) - 1 - db, -1, -1):
        top = rem[shift + db]
        if top % lead:
            raise DivisionInexact(top, lead, "poly_divexact leading coefficient")
        factor = top // lead
        quot[shift] = factor
        if factor:
            for j, bc in enumerate(b.coeffs):
                rem[shift + j] -= factor * bc
    if any(rem):
        raise DivisionInexact(
            PolyZ(rem).evaluate(2), b.evaluate(2), "poly_divexact nonzero remainder"
        )
    return PolyZ(quot)


# ----------------------------------------------------------------------------
# Generating functions
# ----------------------------------------------------------------------------


def recurrence_step(P: PolyZ, n: int, q: QLike) -> PolyZ:
    """One step of the shared recurrence, from index n-1 to n:

    P(q^2 X)(1-X)(1-qX) + 2 q^n X(1-X) P(qX) + q^{2n-1} X^2 P(X)
    """
    if n < 1:
        raise InvalidParameter(f"recurrence_step needs n >= 1, got {n}")
    qv = order_of(q)
    one_minus_x = PolyZ((1, -1))
    first = poly_scale_arg(P, qv * qv) * one_minus_x * PolyZ((1, -qv))
    second = poly_scale_arg(P, qv) * PolyZ((0, 2 * qv**n)) * one_minus_x
    third = P * PolyZ.monomial(2, qv ** (2 * n - 1))
    return first + second + third


def A_poly(n: int, q: QLike) -> PolyZ:
    """A_n(X) with coefficients taken from rank_count."""
    qv = order_of(q)
    if n < 0:
        raise InvalidParameter(f"n={n} must be >= 0")
    return PolyZ(rank_count(n, r, qv) for r in range(n + 1))


def A_poly_rec(n: int, q: QLike) -> PolyZ:
    """A_n(X) by iterating the recurrence from A_0 = 1."""
    qv = order_of(q)
    if n < 0:
        raise InvalidParameter(f"n={n} must be >= 0")
    poly = PolyZ.one()
    for m in range(1, n + 1):
        poly = recurrence_step(poly, m, qv)
    return poly


def _check_nk(n: int, k: int) -> None:
    if not (0 <= k <= n):
        raise InvalidParameter(f"need 0 <= k <= n, got n={n}, k={k}")


def g_poly(n: int, k: int, q: QLike) -> PolyZ:
    """g_{n,k}(X) = (X;q)_k * A_{n-k}(q^k X)."""
    _check_nk(n, k)
    qv = order_of(q)
    return q_pochhammer_poly(k, qv) * poly_scale_arg(A_poly(n - k, qv), qv**k)


def g_poly_rec(n: int, k: int, q: QLike) -> PolyZ:
    """g_{n,k}(X) by iterating the recurrence from g_{k,k} = (X;q)_k."""
    _check_nk(n, k)
    qv = order_of(q)
    poly = q_pochhammer_poly(k, qv)
    for m in range(k + 1, n + 1):
        poly = recurrence_step(poly, m, qv)
    return poly


def f_poly(n: int, k: int, q: QLike, alpha: TraceClass) -> PolyZ:
    """f^a_{n,k}(X) with coefficients from the closed form f_count."""
    _check_nk(n, k)
    qv = order_of(q)
    return PolyZ(
        f_count(CountQuery(n=n, r=r, k=k, q=qv, alpha=alpha)) for r in range(n + 1)
    )


def f_poly_rec(n: int, k: int, q: QLike, alpha: TraceClass) -> PolyZ:
    """f^a_{n,k}(X) by iterating the recurrence from the base f^a_{k,k}(X)."""
    _check_nk(n, k)
    qv = order_of(q)
    poly = f_poly(k, k, qv, alpha)
    for m in range(k + 1, n + 1):
        poly = recurrence_step(poly, m, qv)
    return poly


def a2_closed_form(q: QLike) -> PolyZ:
    """A_2(X) = 1 + (q^2-1)[(q+1)X + (q^2-q)X^2]."""
    qv = order_of(q)
    return PolyZ((1, (qv * qv - 1) * (qv + 1), (qv * qv - 1) * (qv * qv - qv)))


def f_table_rec(n: int, k: int, q: QLike, alpha: TraceClass) -> List[int]:
    """The row (f^a_{n,r,k})_{r=0..n} from the coefficient recursion for n > k.

    The base row n = k comes from the closed forms.
    """
    _check_nk(n, k)
    qv = order_of(q)
    row = [
        f_count(CountQuery(n=k, r=r, k=k, q=qv, alpha=alpha)) for r in range(k + 1)
    ]
    for m in range(k + 1, n + 1):
        prev = row

        def at(i: int) -> int:
            return prev[i] if 0 <= i < len(prev) else 0

        row = []
        for r in range(m + 1):
            value = at(r) * qv ** (2 * r)
            if r >= 1:
                value += at(r - 1) * qv ** (2 * r - 2) * (2 * qv ** (m - r + 1) - 1 - qv)
            if r >= 2:
                value += at(r - 2) * qv ** (2 * r - 3) * (qv ** (m - r + 1) - 1) ** 2
            row.append(value)
        logging.debug(f"f_table_rec n={m} k={k} q={qv} {alpha.name}: {row}")
    return row
