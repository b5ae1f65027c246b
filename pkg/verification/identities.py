"""
Formula-only checks: every closed form against the others, the recurrences
against the closed forms, and the special-case formulas against g_count.
Nothing here enumerates matrices.
"""

from __future__ import annotations

from typing import Iterator, Optional, Tuple

from algebra.counts import (
    CountQuery,
    TraceClass,
    f_count,
    f_row,
    full_rank_diff,
    g_count,
    k_minus_1_diff,
    next_row_k_plus_1,
    prasad_diff,
)
from algebra.polyring import (
    A_poly,
    A_poly_rec,
    PolyZ,
    a2_closed_form,
    f_poly,
    f_poly_rec,
    f_table_rec,
    g_poly,
    g_poly_rec,
    poly_divexact,
    poly_scale_arg,
)
from algebra.qanalogs import (
    gauss_binom,
    matrix_count,
    q_binomial_expand,
    q_pochhammer_poly,
    rank_count,
    rank_count_product,
)
from verification.registry import CheckContext, register_check

CLASSES = (TraceClass.ZERO, TraceClass.NONZERO)


def _grid(ctx: CheckContext) -> Iterator[Tuple[int, int]]:
    for q in ctx.q_list:
        for n in range(ctx.max_n + 1):
            yield n, q


def check_gauss_symmetry(ctx: CheckContext) -> Optional[str]:
    for n, q in _grid(ctx):
        for r in range(n + 1):
            if gauss_binom(n, r, q) != gauss_binom(n, n - r, q):
                return f"[{n} {r}]_{q} != [{n} {n - r}]_{q}"
    return None


def check_q_binomial_theorem(ctx: CheckContext) -> Optional[str]:
    for q in ctx.q_list:
        for n in range(2 * ctx.max_n + 1):
            if q_binomial_expand(n, q) != q_pochhammer_poly(n, q):
                return f"n={n} q={q}: {q_binomial_expand(n, q)} != {q_pochhammer_poly(n, q)}"
    return None


def check_rank_partition(ctx: CheckContext) -> Optional[str]:
    for n, q in _grid(ctx):
        total = sum(rank_count(n, r, q) for r in range(n + 1))
        if total != matrix_count(n, q):
            return f"n={n} q={q}: sum_r a(n,r,q) = {total} != q^(n^2) = {matrix_count(n, q)}"
    return None


def check_rank_product(ctx: CheckContext) -> Optional[str]:
    for n, q in _grid(ctx):
        for r in range(n + 1):
            if rank_count(n, r, q) != rank_count_product(n, r, q):
                return f"a({n},{r},{q}): {rank_count(n, r, q)} != {rank_count_product(n, r, q)}"
    return None


def check_conservation(ctx: CheckContext) -> Optional[str]:
    for n, q in _grid(ctx):
        for k in range(n + 1):
            for r in range(n + 1):
                zero = f_count(CountQuery(n, r, k, q, TraceClass.ZERO))
                nonzero = f_count(CountQuery(n, r, k, q, TraceClass.NONZERO))
                if zero + (q - 1) * nonzero != rank_count(n, r, q):
                    return f"n={n} r={r} k={k} q={q}: f0={zero} f1={nonzero}"
                if zero - nonzero != g_count(n, r, k, q):
                    return f"n={n} r={r} k={k} q={q}: f0-f1={zero - nonzero} != g"
    return None


def check_main_theorem_vs_gf(ctx: CheckContext) -> Optional[str]:
    for n, q in _grid(ctx):
        for k in range(n + 1):
            poly = g_poly(n, k, q)
            for r in range(n + 1):
                if poly.coeff(r) != g_count(n, r, k, q):
                    return f"n={n} r={r} k={k} q={q}: [X^r] g_poly = {poly.coeff(r)}, g_count = {g_count(n, r, k, q)}"
            if poly.degree > n:
                return f"n={n} k={k} q={q}: g_poly has degree {poly.degree}"
    return None


def check_prasad(ctx: CheckContext) -> Optional[str]:
    for k, q in _grid(ctx):
        for r in range(k + 1):
            if prasad_diff(k, r, q) != g_count(k, r, k, q):
                return f"k={k} r={r} q={q}: {prasad_diff(k, r, q)} != {g_count(k, r, k, q)}"
    return None


def check_k_minus_1(ctx: CheckContext) -> Optional[str]:
    for n, q in _grid(ctx):
        k = n - 1
        if k < 0:
            continue
        for r in range(k + 1):
            if k_minus_1_diff(k, r, q) != g_count(n, r, k, q):
                return f"k={k} r={r} q={q}: {k_minus_1_diff(k, r, q)} != {g_count(n, r, k, q)}"
    return None


def check_full_rank(ctx: CheckContext) -> Optional[str]:
    for n, q in _grid(ctx):
        k = n - 1
        if k < 0:
            continue
        if full_rank_diff(k, q) != g_count(n, n, k, q):
            return f"k={k} q={q}: {full_rank_diff(k, q)} != {g_count(n, n, k, q)}"
    return None


def check_A_recurrence(ctx: CheckContext) -> Optional[str]:
    for n, q in _grid(ctx):
        if A_poly(n, q) != A_poly_rec(n, q):
            return f"n={n} q={q}: {A_poly(n, q)} != {A_poly_rec(n, q)}"
    return None


def check_g_recurrence(ctx: CheckContext) -> Optional[str]:
    for n, q in _grid(ctx):
        for k in range(n + 1):
            if g_poly(n, k, q) != g_poly_rec(n, k, q):
                return f"n={n} k={k} q={q}: {g_poly(n, k, q)} != {g_poly_rec(n, k, q)}"
    return None


def check_f_recurrence(ctx: CheckContext) -> Optional[str]:
    for n, q in _grid(ctx):
        for k in range(n + 1):
            for alpha in CLASSES:
                if f_poly(n, k, q, alpha) != f_poly_rec(n, k, q, alpha):
                    return f"n={n} k={k} q={q} {alpha.label}: {f_poly(n, k, q, alpha)} != {f_poly_rec(n, k, q, alpha)}"
    return None


def check_f_table_rec(ctx: CheckContext) -> Optional[str]:
    for n, q in _grid(ctx):
        for k in range(n + 1):
            for alpha in CLASSES:
                rec = f_table_rec(n, k, q, alpha)
                closed = f_row(n, k, q, alpha)
                if rec != closed:
                    return f"n={n} k={k} q={q} {alpha.label}: {rec} != {closed}"
    return None


def check_next_row(ctx: CheckContext) -> Optional[str]:
    for k, q in _grid(ctx):
        for alpha in CLASSES:
            stepped = next_row_k_plus_1(f_row(k, k, q, alpha), k, q)
            expected = f_row(k + 1, k, q, alpha)
            if stepped != expected:
                return f"k={k} q={q} {alpha.label}: {stepped} != {expected}"
    return None


def check_low_codimension_quotients(ctx: CheckContext) -> Optional[str]:
    """g_{k+1,k}/(X;q)_k = 1 + (q-1)q^k X and g_{k+2,k}/(X;q)_k = A_2(q^k X)."""
    for k, q in _grid(ctx):
        base = q_pochhammer_poly(k, q)
        one_step = poly_divexact(g_poly(k + 1, k, q), base)
        if one_step != PolyZ((1, (q - 1) * q**k)):
            return f"k={k} q={q}: g_(k+1,k)/(X;q)_k = {one_step}"
        two_step = poly_divexact(g_poly(k + 2, k, q), base)
        if two_step != poly_scale_arg(a2_closed_form(q), q**k):
            return f"k={k} q={q}: g_(k+2,k)/(X;q)_k = {two_step}"
    return None


register_check("identities", "gauss_symmetry", check_gauss_symmetry, "[n r]_q = [n n-r]_q")
register_check("identities", "q_binomial_theorem", check_q_binomial_theorem, "expanded q-binomial sum equals (X;q)_n")
register_check("identities", "rank_partition", check_rank_partition, "sum_r a(n, r, q) = q^{n^2}")
register_check("identities", "rank_product", check_rank_product, "a(n, r, q) from the Gaussian binomial and from the product agree")
register_check("identities", "conservation", check_conservation, "f0 + (q-1) f1 = a and f0 - f1 = g")
register_check("identities", "main_theorem_vs_gf", check_main_theorem_vs_gf, "coefficients of (X;q)_k A_{n-k}(q^k X) equal g_count")
register_check("identities", "prasad", check_prasad, "n = k difference formula equals g_count")
register_check("identities", "k_minus_1", check_k_minus_1, "n = k+1 difference formula equals g_count")
register_check("identities", "full_rank", check_full_rank, "n = r = k+1 difference formula equals g_count")
register_check("identities", "A_recurrence", check_A_recurrence, "A_n(X) from rank counts equals the recurrence")
register_check("identities", "g_recurrence", check_g_recurrence, "g_{n,k}(X) closed form equals the recurrence")
register_check("identities", "f_recurrence", check_f_recurrence, "f_{n,k}(X) closed form equals the recurrence")
register_check("identities", "f_table_rec", check_f_table_rec, "coefficient recursion rows equal f_count rows")
register_check("identities", "next_row", check_next_row, "block-split step k -> k+1 equals f_count")
register_check("identities", "low_codimension_quotients", check_low_codimension_quotients, "g_{k+1,k} and g_{k+2,k} divided by (X;q)_k")
