"""
Finite fields GF(p^m).

Elements are coefficient vectors (c_0, ..., c_{m-1}) in the basis
1, t, ..., t^{m-1}, reduced modulo a monic irreducible polynomial. Each
element also has an integer index sum(c_i * p^i), which gives the canonical
enumeration order: index 0 is zero and index 1 is one.

FieldCtx does its arithmetic on indices; FieldElem is the value-like
wrapper for callers that want operators.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, List, Optional, Sequence, Tuple

from algebra.qanalogs import QParam, is_prime

MAX_FIELD_ORDER = 2**20
# Extension fields up to this order get precomputed add/mul/inverse tables.
TABLE_LIMIT = 256


class FieldError(Exception):
    """Base exception for finite-field errors."""

    pass


class NotPrime(FieldError, ValueError):
    """The characteristic is not a prime."""

    def __init__(self, p: int):
        self.p = p
        super().__init__(f"p={p} is not prime")


class DegreeTooLarge(FieldError, ValueError):
    """p^m is above the order the field tables are built for."""

    def __init__(self, p: int, m: int, limit: int = MAX_FIELD_ORDER):
        self.p = p
        self.m = m
        self.limit = limit
        super().__init__(f"GF({p}^{m}) has order {p ** m} > {limit}")


class NotIrreducible(FieldError, ValueError):
    """The given modulus is not monic irreducible of degree m."""

    def __init__(self, modulus: Sequence[int], p: int):
        self.modulus = tuple(modulus)
        self.p = p
        super().__init__(
            f"{format_poly(modulus)} is not a monic irreducible polynomial over GF({p})"
        )


class DivisionByZero(FieldError, ZeroDivisionError):
    """Inverting the zero element."""

    def __init__(self):
        super().__init__("inverse of the zero element")


class ElementMismatch(FieldError, ValueError):
    """Operands come from different fields."""

    def __init__(self):
        super().__init__("elements belong to different fields")


# ----------------------------------------------------------------------------
# Polynomials over GF(p), low-degree-first coefficient lists
# ----------------------------------------------------------------------------


def _trim(a: List[int]) -> List[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod_p(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    """Remainder of a modulo b over GF(p); b must have a nonzero lead."""
    rem = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    inv_lead = pow(b[-1], p - 2, p)
    db = len(b) - 1
    while len(rem) - 1 >= db and rem:
        factor = rem[-1] * inv_lead % p
        shift = len(rem) - 1 - db
        for i, bc in enumerate(b):
            rem[shift + i] = (rem[shift + i] - factor * bc) % p
        _trim(rem)
    return rem


def _monic_polys(degree: int, p: int) -> Iterator[Tuple[int, ...]]:
    """Monic polynomials of the given degree, ordered by the index of their
    lower coefficient vector."""
    for index in range(p**degree):
        low = _digits(index, p, degree)
        yield tuple(low) + (1,)


def _digits(index: int, p: int, m: int) -> List[int]:
    out = []
    for _ in range(m):
        index, c = divmod(index, p)
        out.append(c)
    return out


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Whether a monic polynomial is irreducible over GF(p).

    Degrees up to 3 only need a root test; above that every monic divisor of
    degree <= m/2 is tried.
    """
    modulus = list(modulus)
    m = len(modulus) - 1
    if m < 1 or modulus[-1] % p != 1:
        return False
    if m == 1:
        return True
    if m <= 3:
        for x in range(p):
            value = 0
            for c in reversed(modulus):
                value = (value * x + c) % p
            if value == 0:
                return False
        return True
    for d in range(1, m // 2 + 1):
        for divisor in _monic_polys(d, p):
            if not _polymod_p(modulus, divisor, p):
                return False
    return True


def format_poly(coeffs: Sequence[int], var: str = "t") -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        if i == 0:
            terms.append(f"{c}")
        else:
            power = var if i == 1 else f"{var}^{i}"
            terms.append(power if c == 1 else f"{c}{power}")
    return " + ".join(terms) if terms else "0"


# ----------------------------------------------------------------------------
# Field context and elements
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldCtx:
    """GF(p^m) with a fixed monic irreducible modulus (low degree first).

    Build with field_ctx(); the constructor trusts its arguments.
    """

    p: int
    m: int
    modulus: Tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.m

    @property
    def zero(self) -> "FieldElem":
        return self.elem(0)

    @property
    def one(self) -> "FieldElem":
        return self.elem(1)

    def __str__(self):
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m}) = GF({self.p})[t]/({format_poly(self.modulus)})"

    # -- index <-> coefficient vector -------------------------------------

    def coeffs_of(self, index: int) -> Tuple[int, ...]:
        return tuple(_digits(index, self.p, self.m))

    def index_of(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) != self.m:
            raise FieldError(f"expected {self.m} coefficients, got {len(coeffs)}")
        index = 0
        for c in reversed(coeffs):
            if not 0 <= c < self.p:
                raise FieldError(f"coefficient {c} outside [0, {self.p})")
            index = index * self.p + c
        return index

    def elem(self, index: int) -> "FieldElem":
        if not 0 <= index < self.q:
            raise FieldError(f"element index {index} outside [0, {self.q})")
        return FieldElem(self, self.coeffs_of(index))

    def enumerate(self) -> List["FieldElem"]:
        """All q elements in canonical order."""
        return [self.elem(i) for i in range(self.q)]

    # -- arithmetic on indices --------------------------------------------

    def _slow_add(self, a: int, b: int) -> int:
        p = self.p
        out, scale = 0, 1
        while a or b:
            a, ca = divmod(a, p)
            b, cb = divmod(b, p)
            out += (ca + cb) % p * scale
            scale *= p
        return out

    def _slow_neg(self, a: int) -> int:
        p = self.p
        out, scale = 0, 1
        while a:
            a, ca = divmod(a, p)
            out += (-ca) % p * scale
            scale *= p
        return out

    def _slow_mul(self, a: int, b: int) -> int:
        p, m = self.p, self.m
        ca, cb = _digits(a, p, m), _digits(b, p, m)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] += x * y
        rem = _polymod_p(prod, self.modulus, p)
        rem += [0] * (m - len(rem))
        return self.index_of(rem)

    def _slow_inv(self, a: int) -> int:
        # a^(q-2) by square-and-multiply
        result, base, e = 1, a, self.q - 2
        while e:
            if e & 1:
                result = self._slow_mul(result, base)
            base = self._slow_mul(base, base)
            e >>= 1
        return result

    @cached_property
    def _tables(self) -> Optional[Tuple[list, list, list, list]]:
        if self.m == 1 or self.q > TABLE_LIMIT:
            return None
        q = self.q
        logging.debug(f"building operation tables for {self}")
        add = [[self._slow_add(a, b) for b in range(q)] for a in range(q)]
        mul = [[self._slow_mul(a, b) for b in range(q)] for a in range(q)]
        neg = [self._slow_neg(a) for a in range(q)]
        inv = [0] * q
        for a in range(1, q):
            inv[a] = mul[a].index(1)
        return add, mul, neg, inv

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        tables = self._tables
        return tables[0][a][b] if tables else self._slow_add(a, b)

    def neg(self, a: int) -> int:
        if self.m == 1:
            return -a % self.p
        tables = self._tables
        return tables[2][a] if tables else self._slow_neg(a)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        tables = self._tables
        return tables[1][a][b] if tables else self._slow_mul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero()
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        tables = self._tables
        return tables[3][a] if tables else self._slow_inv(a)


@dataclass(frozen=True)
class FieldElem:
    ctx: FieldCtx
    coeffs: Tuple[int, ...]

    @property
    def index(self) -> int:
        return self.ctx.index_of(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _other(self, other: "FieldElem") -> int:
        if not isinstance(other, FieldElem):
            return NotImplemented
        if other.ctx != self.ctx:
            raise ElementMismatch()
        return other.index

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self.ctx.elem(self.ctx.add(self.index, b))

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self.ctx.elem(self.ctx.sub(self.index, b))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self.ctx.elem(self.ctx.mul(self.index, b))

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self.ctx.elem(self.ctx.mul(self.index, self.ctx.inv(b)))

    def __neg__(self):
        return self.ctx.elem(self.ctx.neg(self.index))

    def inv(self) -> "FieldElem":
        return self.ctx.elem(self.ctx.inv(self.index))

    def __str__(self):
        return format_poly(self.coeffs)

    def __repr__(self):
        return f"FieldElem({self.ctx.p}^{self.ctx.m}, {list(self.coeffs)})"


# Function forms of the element operators.


def add(x: FieldElem, y: FieldElem) -> FieldElem:
    return x + y


def sub(x: FieldElem, y: FieldElem) -> FieldElem:
    return x - y


def mul(x: FieldElem, y: FieldElem) -> FieldElem:
    return x * y


def neg(x: FieldElem) -> FieldElem:
    return -x


def inv(x: FieldElem) -> FieldElem:
    return x.inv()


def eq(x: FieldElem, y: FieldElem) -> bool:
    return x == y


def enumerate_field(ctx: FieldCtx) -> List[FieldElem]:
    return ctx.enumerate()


def field_ctx(p: int, m: int = 1, modulus: Optional[Sequence[int]] = None) -> FieldCtx:
    """Build GF(p^m).

    Without an explicit modulus the lexicographically least monic irreducible
    polynomial of degree m is used (for m = 1 that is t itself, which the
    prime-field arithmetic never consults).
    """
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrime(p)
    if not isinstance(m, int) or m < 1:
        raise FieldError(f"degree m={m} must be >= 1")
    if p**m > MAX_FIELD_ORDER:
        raise DegreeTooLarge(p, m)
    if modulus is not None:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != m + 1 or not is_irreducible(modulus, p):
            raise NotIrreducible(modulus, p)
    else:
        modulus = next(f for f in _monic_polys(m, p) if is_irreducible(f, p))
    ctx = FieldCtx(p, m, tuple(modulus))
    logging.debug(f"field_ctx: {ctx}")
    return ctx


def irreducible_polys(p: int, m: int) -> Iterator[Tuple[int, ...]]:
    """All monic irreducible polynomials of degree m over GF(p), in search order."""
    return (f for f in _monic_polys(m, p) if is_irreducible(f, p))


def field_of_order(q: int) -> FieldCtx:
    """GF(q) for a prime power q, with the default modulus."""
    qp = QParam.of(q)
    return field_ctx(qp.p, qp.m)
