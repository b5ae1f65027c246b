"""
Checks that compare the closed forms with brute-force enumeration.
"""

from __future__ import annotations

import logging
import random
from typing import Iterator, Optional, Tuple

from algebra.counts import CountQuery, TraceClass, f_count
from algebra.qanalogs import gauss_binom, rank_count
from fields.gfq import FieldCtx, field_ctx, field_of_order
from fields.matrix import canonical_B, mat_inverse, mat_rank, random_invertible, random_rank_k
from oracle.enumeration import (
    ORACLE_LIMIT,
    TooLarge,
    count_subspaces,
    enumerate_counts,
    z_count_table,
)
from oracle.parallel import partitioned_enumerate
from verification.registry import Z_SAMPLE_LIMIT, Z_SAMPLES, CheckContext, register_check

# GF(8) under its two irreducible cubics.
GF8_MODULI = ((1, 1, 0, 1), (1, 0, 1, 1))
GF8_MAX_N = 2
DETERMINISM_WORKERS = (1, 2, 8)


def preflight(ctx: CheckContext) -> None:
    """Refuse up front when any grid point would exceed the enumeration guard."""
    for q in ctx.q_list:
        iterations = q ** (ctx.max_n * ctx.max_n)
        if iterations > ORACLE_LIMIT:
            raise TooLarge(iterations)


def _fields(ctx: CheckContext) -> Iterator[Tuple[int, FieldCtx]]:
    for q in ctx.q_list:
        yield q, field_of_order(q)


def _class_of(index: int) -> TraceClass:
    return TraceClass.ZERO if index == 0 else TraceClass.NONZERO


def check_oracle_vs_closed_form(ctx: CheckContext) -> Optional[str]:
    for q, field in _fields(ctx):
        for n in range(ctx.max_n + 1):
            for k in range(n + 1):
                table = partitioned_enumerate(n, k, field, ctx.workers)
                for (r, a), observed in table.cells.items():
                    expected = f_count(CountQuery(n, r, k, q, _class_of(a)))
                    if observed != expected:
                        return f"n={n} r={r} k={k} q={q} alpha={a}: oracle {observed}, closed form {expected}"
                if table.total() != q ** (n * n):
                    return f"n={n} k={k} q={q}: {table.total()} matrices tallied"
                for r in range(n + 1):
                    if table.row_total(r) != rank_count(n, r, q):
                        return f"n={n} r={r} q={q}: {table.row_total(r)} rank-{r} matrices"
    return None


def check_class_independence(ctx: CheckContext) -> Optional[str]:
    for q, field in _fields(ctx):
        for n in range(ctx.max_n + 1):
            for k in range(n + 1):
                table = enumerate_counts(n, k, field)
                if not table.nonzero_cells_equal():
                    return f"n={n} k={k} q={q}: nonzero traces differ: {table.rows()}"
    return None


def check_subspace_counts(ctx: CheckContext) -> Optional[str]:
    for q, field in _fields(ctx):
        for n in range(ctx.max_n + 1):
            for r in range(n + 1):
                if q ** (r * (n - r)) > ORACLE_LIMIT:
                    continue
                found = count_subspaces(n, r, field)
                if found != gauss_binom(n, r, q):
                    return f"n={n} r={r} q={q}: {found} subspaces, [n r]_q = {gauss_binom(n, r, q)}"
    return None


def check_z_bijection(ctx: CheckContext) -> Optional[str]:
    rng = random.Random(ctx.seed)
    for q, field in _fields(ctx):
        for n in range(1, ctx.max_n + 1):
            if q ** (n * n) > Z_SAMPLE_LIMIT:
                continue
            logging.debug(f"z_bijection: {Z_SAMPLES} samples for n={n} q={q}")
            for _ in range(Z_SAMPLES):
                A = random_rank_k(n, rng.randint(0, n), field, rng)
                k = mat_rank(A)
                table = z_count_table(A)
                for (r, a), observed in table.cells.items():
                    expected = f_count(CountQuery(n, r, k, q, _class_of(a)))
                    if observed != expected:
                        return f"A={A.rows()} q={q} r={r} alpha={a}: oracle {observed}, closed form {expected}"
    return None


def check_gl_sandwich(ctx: CheckContext) -> Optional[str]:
    """tr(AX) tallies for A = g1^{-1} B g2 equal the k-trace tallies."""
    rng = random.Random(ctx.seed + 1)
    for q, field in _fields(ctx):
        for n in range(1, ctx.max_n + 1):
            if q ** (n * n) > Z_SAMPLE_LIMIT:
                continue
            for k in range(n + 1):
                expected = enumerate_counts(n, k, field)
                g1 = random_invertible(n, field, rng)
                g2 = random_invertible(n, field, rng)
                A = mat_inverse(g1) @ canonical_B(n, k, field) @ g2
                if z_count_table(A) != expected:
                    return f"A={A.rows()} q={q} k={k}: tr(AX) table differs from the k-trace table"
    return None


def check_partition_determinism(ctx: CheckContext) -> Optional[str]:
    for q, field in _fields(ctx):
        n = min(ctx.max_n, 3)
        if q ** (n * n) > Z_SAMPLE_LIMIT * 8:
            continue
        k = min(n, 2)
        tables = [partitioned_enumerate(n, k, field, w) for w in DETERMINISM_WORKERS]
        for w, table in zip(DETERMINISM_WORKERS[1:], tables[1:]):
            if table != tables[0]:
                return f"n={n} k={k} q={q}: workers={w} differs from workers=1"
    return None


def check_modulus_independence(ctx: CheckContext) -> Optional[str]:
    first, second = (field_ctx(2, 3, m) for m in GF8_MODULI)
    for n in range(min(ctx.max_n, GF8_MAX_N) + 1):
        for k in range(n + 1):
            if enumerate_counts(n, k, first) != enumerate_counts(n, k, second):
                return f"n={n} k={k}: GF(8) tables differ between {first} and {second}"
    return None


def check_random_rank_k(ctx: CheckContext) -> Optional[str]:
    rng = random.Random(ctx.seed + 2)
    for q, field in _fields(ctx):
        for n in range(ctx.max_n + 1):
            for k in range(n + 1):
                M = random_rank_k(n, k, field, rng)
                if mat_rank(M) != k:
                    return f"n={n} k={k} q={q}: random_rank_k gave rank {mat_rank(M)}"
    return None


register_check("oracle", "oracle_vs_closed_form", check_oracle_vs_closed_form, "every enumerated cell equals f_count")
register_check("oracle", "class_independence", check_class_independence, "nonzero trace cells agree within each rank")
register_check("oracle", "subspace_counts", check_subspace_counts, "row-echelon enumeration gives [n r]_q")
register_check("oracle", "z_bijection", check_z_bijection, "tr(AX) counts depend on A only through rank(A)")
register_check("oracle", "gl_sandwich", check_gl_sandwich, "g1^{-1} B g2 reproduces the k-trace table")
register_check("oracle", "partition_determinism", check_partition_determinism, "tables identical for 1, 2 and 8 workers")
register_check("oracle", "modulus_independence", check_modulus_independence, "GF(8) under both cubics gives one table")
register_check("oracle", "random_rank_k", check_random_rank_k, "random_rank_k has the requested rank")
