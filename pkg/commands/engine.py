"""
The click command group: flag parsing, field selection and the mapping of
errors onto exit codes.

    0  success
    1  verification failure, or closed form and oracle disagree
    2  usage or validation error (message on stderr)
    3  an internal invariant broke: an exact division left a remainder or
       a closed form went negative
"""

from __future__ import annotations

import functools
import logging
from typing import Optional

import click

from algebra.counts import CountQuery, NegativeCount, TraceClass
from algebra.qanalogs import CountingError, DivisionInexact, QParam
from commands.command import (
    GF_INFO_LIMIT,
    MethodDisagreement,
    cmd_count,
    cmd_gf_info,
    cmd_table,
    cmd_verify,
    cmd_zcount,
)
from commands.records import ArgumentParseError, parse_matrix, parse_q_list
from fields.gfq import FieldError
from oracle.enumeration import OracleError
from verification.registry import DEFAULT_MAX_N, DEFAULT_Q_LIST, CheckContext


class VerificationFailed(click.ClickException):
    """Exit 1: a check failed or two methods disagree."""

    exit_code = 1


class UsageFailure(click.ClickException):
    """Exit 2: bad flags or parameters."""

    exit_code = 2


class InternalFailure(click.ClickException):
    """Exit 3: an internal invariant broke."""

    exit_code = 3


def guarded(fn):
    """Translate library exceptions into ClickExceptions with fixed exit codes."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (DivisionInexact, NegativeCount) as e:
            logging.error(f"internal invariant breach: {e}")
            raise InternalFailure(str(e)) from e
        except MethodDisagreement as e:
            raise VerificationFailed(str(e)) from e
        except (CountingError, FieldError, OracleError, ArgumentParseError) as e:
            raise UsageFailure(str(e)) from e

    return wrapper


def resolve_q(q: Optional[int], p: Optional[int], m: Optional[int]) -> QParam:
    """--q, or --p with an optional --m."""
    if q is not None:
        if p is not None or m is not None:
            raise ArgumentParseError("give either --q or --p/--m, not both")
        return QParam.of(q)
    if p is None:
        raise ArgumentParseError("one of --q or --p is required")
    return QParam(p, 1 if m is None else m)


def field_options(fn):
    fn = click.option("--m", "m", type=int, default=None, help="Extension degree (with --p).")(fn)
    fn = click.option("--p", "p", type=int, default=None, help="Field characteristic.")(fn)
    fn = click.option(
        "--q",
        "q",
        type=int,
        default=None,
        help="Field order, a prime power (factored by trial division, practical up to about 10^12).",
    )(fn)
    return fn


@click.group(context_settings=dict(help_option_names=["-h", "--help"]))
@click.option("--verbose", "-v", is_flag=True, default=False, help="Log debug diagnostics to stderr.")
def main(verbose: bool):
    """Exact counts of n x n matrices by rank and k-trace over GF(q)."""
    logging.getLogger().setLevel(logging.DEBUG if verbose else logging.WARNING)


@main.command()
@click.option("--n", "n", type=int, required=True, help="Matrix size.")
@click.option("--r", "r", type=int, required=True, help="Rank.")
@click.option("--k", "k", type=int, required=True, help="Number of leading diagonal entries in the trace.")
@field_options
@click.option("--alpha", "alpha", required=True, help="Trace class: 0, 1, zero or nonzero.")
@click.option("--method", type=click.Choice(["closed", "rec"]), default="closed", show_default=True)
@click.option("--json", "as_json", is_flag=True, default=False, help="Emit a JSON record.")
@guarded
def count(n, r, k, q, p, m, alpha, method, as_json):
    """Number of rank-r matrices with k-trace in the given class."""
    qparam = resolve_q(q, p, m)
    query = CountQuery(n=n, r=r, k=k, q=qparam, alpha=TraceClass.parse(alpha))
    cmd_count(query, qparam, method, as_json)


@main.command()
@click.option("--n", "n", type=int, required=True, help="Matrix size.")
@click.option("--k", "k", type=int, required=True, help="Number of leading diagonal entries in the trace.")
@field_options
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@guarded
def table(n, k, q, p, m, fmt):
    """Closed-form rows r, f0, f1, g, a for r = 0..n."""
    qparam = resolve_q(q, p, m)
    # validates n and k once, for every row
    CountQuery(n=n, r=0, k=k, q=qparam, alpha=TraceClass.ZERO)
    cmd_table(n, k, qparam, fmt)


@main.command()
@click.option("--suite", type=click.Choice(["identities", "oracle", "all"]), default="all", show_default=True)
@click.option("--max-n", "max_n", type=click.IntRange(min=0), default=DEFAULT_MAX_N, show_default=True)
@click.option(
    "--q-list",
    "q_list",
    default=",".join(str(q) for q in DEFAULT_Q_LIST),
    show_default=True,
    help="Comma-separated prime powers.",
)
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@guarded
def verify(suite, max_n, q_list, workers, seed):
    """Check identities and/or compare formulas with enumeration."""
    ctx = CheckContext(max_n=max_n, q_list=parse_q_list(q_list), workers=workers, seed=seed)
    if not cmd_verify(suite, ctx):
        raise VerificationFailed("verification failed")


@main.command()
@click.option("--matrix", "matrix", required=True, help="'p,m;row;row;...' inline, or a file holding it.")
@click.option("--r", "r", type=int, required=True, help="Rank of X.")
@click.option("--alpha", "alpha", type=int, required=True, help="Element index of the trace value.")
@click.option("--method", type=click.Choice(["closed", "oracle"]), default=None, help="Default: both, when the oracle fits.")
@click.option("--json", "as_json", is_flag=True, default=False, help="Emit JSON records.")
@guarded
def zcount(matrix, r, alpha, method, as_json):
    """Number of rank-r X with tr(AX) = alpha."""
    cmd_zcount(parse_matrix(matrix), r, alpha, method, as_json)


@main.command("gf-info")
@click.option("--p", "p", type=int, required=True, help="Field characteristic.")
@click.option("--m", "m", type=int, default=1, show_default=True, help="Extension degree.")
@click.option("--limit", type=click.IntRange(min=0), default=GF_INFO_LIMIT, show_default=True)
@click.option("--json", "as_json", is_flag=True, default=False)
@guarded
def gf_info(p, m, limit, as_json):
    """Modulus and element table of GF(p^m)."""
    cmd_gf_info(p, m, limit, as_json)
