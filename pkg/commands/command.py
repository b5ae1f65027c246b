"""
Command handlers. Each one computes, writes its output through the display
singleton and returns what it printed, so engine.py stays pure wiring.
"""

from __future__ import annotations

import json
import logging
import time
from typing import List, Optional

from algebra.counts import CountQuery, TraceClass, count_Z, f_count, g_count
from algebra.polyring import f_table_rec
from algebra.qanalogs import InvalidParameter, QParam, rank_count
from commands.display import display
from commands.records import OutputRecord, TableRecord
from fields.gfq import field_ctx
from fields.matrix import MatGF, mat_rank
from oracle.enumeration import ORACLE_LIMIT, oracle_Z
from verification.oracle_checks import preflight
from verification.registry import CheckContext, default_registry

GF_INFO_LIMIT = 64


class MethodDisagreement(Exception):
    """Closed form and oracle returned different values."""

    def __init__(self, closed: int, oracle: int):
        self.closed = closed
        self.oracle = oracle
        super().__init__(f"closed form gives {closed} but the oracle counts {oracle}")


def _elapsed_ms(start: float) -> int:
    return int((time.perf_counter() - start) * 1000)


def _emit(record: OutputRecord, as_json: bool):
    display.write(record.to_json() if as_json else record.result)


# ============================================================================
# COUNTING
# ============================================================================


def cmd_count(query: CountQuery, qparam: QParam, method: str = "closed", as_json: bool = False) -> OutputRecord:
    """|Y^alpha_{n,r,k}| by the closed form or the coefficient recursion."""
    start = time.perf_counter()
    if method == "closed":
        value, label = f_count(query), "closed_form"
    elif method == "rec":
        value, label = f_table_rec(query.n, query.k, qparam, query.alpha)[query.r], "recurrence"
    else:
        raise InvalidParameter(f"unknown method {method!r}")
    record = OutputRecord(
        query={
            "n": query.n,
            "r": query.r,
            "k": query.k,
            "p": qparam.p,
            "m": qparam.m,
            "alpha": query.alpha.label,
        },
        result=str(value),
        method=label,
        elapsed_ms=_elapsed_ms(start),
    )
    _emit(record, as_json)
    return record


def cmd_table(n: int, k: int, qparam: QParam, fmt: str = "csv") -> TableRecord:
    """Rows (r, f0, f1, g, a) for r = 0..n."""
    start = time.perf_counter()
    q = qparam.q
    rows = []
    for r in range(n + 1):
        f0 = f_count(CountQuery(n, r, k, q, TraceClass.ZERO))
        f1 = f_count(CountQuery(n, r, k, q, TraceClass.NONZERO))
        rows.append((r, f0, f1, g_count(n, r, k, q), rank_count(n, r, q)))
    record = TableRecord(
        query={"n": n, "k": k, "p": qparam.p, "m": qparam.m},
        rows=rows,
        elapsed_ms=_elapsed_ms(start),
    )
    display.write(record.to_json() if fmt == "json" else record.to_csv())
    return record


def cmd_zcount(
    A: MatGF,
    r: int,
    alpha_index: int,
    method: Optional[str] = None,
    as_json: bool = False,
) -> List[OutputRecord]:
    """|{X of rank r : tr(AX) = alpha}|.

    With no method the closed form always runs and the oracle joins it when
    the enumeration fits under the guard; the two must agree.
    """
    ctx = A.ctx
    alpha = ctx.elem(alpha_index)
    query = {
        "n": A.n_rows,
        "r": r,
        "k": mat_rank(A) if A.is_square else None,
        "p": ctx.p,
        "m": ctx.m,
        "alpha": alpha_index,
    }
    run_closed = method in (None, "closed")
    run_oracle = method == "oracle" or (method is None and ctx.q ** (A.n_rows * A.n_rows) <= ORACLE_LIMIT)

    if method is None and not run_oracle:
        display.error(f"oracle skipped: {ctx.q}^{A.n_rows * A.n_rows} matrices exceed the size guard")

    records = []
    if run_closed:
        start = time.perf_counter()
        value = count_Z(A, r, alpha)
        records.append(OutputRecord(query, str(value), "closed_form", _elapsed_ms(start)))
    if run_oracle:
        start = time.perf_counter()
        value = oracle_Z(A, r, alpha)
        records.append(OutputRecord(query, str(value), "oracle", _elapsed_ms(start)))

    for record in records:
        if as_json:
            display.write(record.to_json())
        elif len(records) > 1:
            display.write(f"{record.method}: {record.result}")
        else:
            display.write(record.result)

    if len(records) == 2 and records[0].value != records[1].value:
        raise MethodDisagreement(records[0].value, records[1].value)
    return records


# ============================================================================
# VERIFICATION
# ============================================================================


def cmd_verify(suite: str, ctx: CheckContext) -> bool:
    """Run the selected suites; True iff every check passed."""
    if suite in ("oracle", "all"):
        preflight(ctx)
    registry = default_registry()
    logging.info(f"verify suite={suite} max_n={ctx.max_n} q_list={ctx.q_list} workers={ctx.workers}")
    results = registry.run(suite, ctx)
    for result in results:
        display.write(result.line())
    failed = [r for r in results if not r.passed]
    display.write(f"{len(results)} checks, {len(results) - len(failed)} passed, {len(failed)} failed")
    display.write("PASS" if not failed else "FAIL")
    return not failed


# ============================================================================
# FIELD INFORMATION
# ============================================================================


def cmd_gf_info(p: int, m: int = 1, limit: int = GF_INFO_LIMIT, as_json: bool = False) -> dict:
    """The field's modulus and its elements in canonical order."""
    ctx = field_ctx(p, m)
    shown = ctx.enumerate()[: max(0, limit)]
    info = {
        "p": ctx.p,
        "m": ctx.m,
        "q": ctx.q,
        "modulus": list(ctx.modulus),
        "elements": [
            {"index": e.index, "coeffs": list(e.coeffs), "poly": str(e)} for e in shown
        ],
    }
    if as_json:
        display.write(json.dumps(info))
        return info

    display.write(str(ctx))
    display.write(f"modulus: {list(ctx.modulus)} (low degree first)")
    display.write("index  coeffs  element")
    for e in shown:
        display.write(f"{e.index:>5}  {list(e.coeffs)}  {e}")
    if len(shown) < ctx.q:
        display.write(f"... {ctx.q - len(shown)} more (raise --limit)")
    return info
