import json
import time

import pytest

import algebra.counts
import commands.command
from algebra.qanalogs import DivisionInexact
from commands.records import (
    ArgumentParseError,
    MatrixParseError,
    OutputRecord,
    parse_matrix,
    parse_q_list,
)
from verification.registry import CheckRegistry
from tests.helpers import run_cli


# ============================================================================
# count
# ============================================================================


@pytest.mark.parametrize(
    "args,expected",
    [
        (["--n", 2, "--r", 1, "--k", 1, "--q", 2, "--alpha", 0], "5"),
        (["--n", 3, "--r", 0, "--k", 2, "--q", 5, "--alpha", 1], "0"),
        (["--n", 2, "--r", 2, "--k", 2, "--q", 2, "--alpha", 0], "4"),
        (["--n", 2, "--r", 2, "--k", 2, "--q", 2, "--alpha", "nonzero"], "2"),
        (["--n", 2, "--r", 1, "--k", 1, "--p", 2, "--alpha", "zero"], "5"),
    ],
)
def test_count(args, expected):
    run = run_cli("count", *args)
    assert run.exit_code == 0
    assert run.lines == [expected]


def test_count_methods_agree():
    for q in (2, 3, 4):
        closed = run_cli("count", "--n", 4, "--r", 3, "--k", 2, "--q", q, "--alpha", 1)
        rec = run_cli("count", "--n", 4, "--r", 3, "--k", 2, "--q", q, "--alpha", 1, "--method", "rec")
        assert closed.lines == rec.lines


def test_count_p_m_equals_q():
    by_q = run_cli("count", "--n", 3, "--r", 2, "--k", 1, "--q", 4, "--alpha", 0)
    by_pm = run_cli("count", "--n", 3, "--r", 2, "--k", 1, "--p", 2, "--m", 2, "--alpha", 0)
    assert by_q.lines == by_pm.lines


def test_count_json_record_round_trips():
    run = run_cli("count", "--n", 6, "--r", 6, "--k", 3, "--q", 5, "--alpha", 0, "--json")
    assert run.exit_code == 0
    line = run.lines[0]
    data = json.loads(line)
    assert data["query"] == {"n": 6, "r": 6, "k": 3, "p": 5, "m": 1, "alpha": "zero"}
    assert data["method"] == "closed_form"
    assert isinstance(data["result"], str) and int(data["result"]) > 2**64
    assert isinstance(data["elapsed_ms"], int)
    assert json.dumps(json.loads(line)) == line
    assert OutputRecord.from_json(line).to_json() == line


@pytest.mark.parametrize(
    "args",
    [
        ["--n", 2, "--r", 3, "--k", 1, "--q", 2, "--alpha", 0],
        ["--n", 2, "--r", 1, "--k", 1, "--q", 6, "--alpha", 0],
        ["--n", 2, "--r", 1, "--k", 1, "--q", 2, "--alpha", 7],
        ["--n", 2, "--r", 1, "--k", 1, "--q", 2, "--p", 2, "--alpha", 0],
        ["--n", 2, "--r", 1, "--k", 1, "--alpha", 0],
        ["--r", 1, "--k", 1, "--q", 2, "--alpha", 0],
        ["--n", 2, "--r", 1, "--k", 1, "--p", 4, "--alpha", 0],
    ],
)
def test_count_usage_errors_exit_2(args):
    run = run_cli("count", *args)
    assert run.exit_code == 2
    assert run.output.strip()


def test_inexact_division_exits_3(monkeypatch):
    def broken(query):
        raise DivisionInexact(7, 2, "f_count")

    monkeypatch.setattr(commands.command, "f_count", broken)
    run = run_cli("count", "--n", 2, "--r", 1, "--k", 1, "--q", 2, "--alpha", 0)
    assert run.exit_code == 3
    assert "Inexact division" in run.output


def test_negative_count_exits_3(monkeypatch):
    # a(2, 2, 2) = 6, so g = -14 leaves 10 nonzero-trace matrices and 6 - 10 with trace zero
    monkeypatch.setattr(algebra.counts, "g_count", lambda n, r, k, q: -14)
    run = run_cli("count", "--n", 2, "--r", 2, "--k", 2, "--q", 2, "--alpha", 0)
    assert run.exit_code == 3
    assert "negative count -4" in run.output


# ============================================================================
# table
# ============================================================================


def test_table_csv():
    run = run_cli("table", "--n", 2, "--k", 1, "--q", 2)
    assert run.exit_code == 0
    assert run.lines == ["r,f0,f1,g,a", "0,1,0,1,1", "1,5,4,1,9", "2,2,4,-2,6"]


def test_table_one_by_one():
    run = run_cli("table", "--n", 1, "--k", 1, "--q", 3)
    assert run.lines[1:] == ["0,1,0,1,1", "1,0,1,-1,2"]


def test_table_n_zero_is_a_single_row():
    run = run_cli("table", "--n", 0, "--k", 0, "--q", 2)
    assert run.exit_code == 0
    assert run.lines == ["r,f0,f1,g,a", "0,1,0,1,1"]


def test_table_json():
    run = run_cli("table", "--n", 2, "--k", 1, "--q", 2, "--format", "json")
    data = json.loads(run.lines[0])
    assert data["rows"][1] == {"r": "1", "f0": "5", "f1": "4", "g": "1", "a": "9"}
    assert data["query"] == {"n": 2, "k": 1, "p": 2, "m": 1}


def test_table_rejects_k_above_n():
    assert run_cli("table", "--n", 2, "--k", 3, "--q", 2).exit_code == 2


# ============================================================================
# verify
# ============================================================================


def test_verify_identities():
    run = run_cli("verify", "--suite", "identities", "--max-n", 6, "--q-list", "2,3,5")
    assert run.exit_code == 0
    assert run.lines[-1] == "PASS"
    assert all(line.startswith("PASS") for line in run.lines[:-2])


def test_verify_oracle():
    run = run_cli("verify", "--suite", "oracle", "--max-n", 3, "--q-list", "2,3")
    assert run.exit_code == 0, run.output
    assert run.lines[-1] == "PASS"


def test_verify_defaults_finish_quickly():
    start = time.perf_counter()
    run = run_cli("verify")
    assert run.exit_code == 0, run.output
    assert run.lines[-1] == "PASS"
    assert any(line.startswith("PASS oracle.oracle_vs_closed_form") for line in run.lines)
    assert time.perf_counter() - start < 300


def test_verify_size_guard_exits_2():
    run = run_cli("verify", "--suite", "oracle", "--max-n", 9, "--q-list", "2")
    assert run.exit_code == 2
    assert "size guard exceeded" in run.output


def test_verify_bad_q_list_exits_2():
    assert run_cli("verify", "--q-list", "2,6").exit_code == 2


def test_verify_failure_exits_1(monkeypatch):
    registry = CheckRegistry()
    registry.register("identities", "broken", lambda ctx: "always", "demo")
    monkeypatch.setattr(commands.command, "default_registry", lambda: registry)
    run = run_cli("verify", "--suite", "identities")
    assert run.exit_code == 1
    assert any(line.startswith("FAIL identities.broken") for line in run.lines)
    assert "counterexample: always" in run.output


# ============================================================================
# zcount
# ============================================================================


@pytest.mark.parametrize(
    "matrix,r,alpha,expected",
    [
        ("2,1;0 0;0 0", 1, 0, "9"),
        ("2,1;0 1;0 0", 1, 1, "4"),
        ("3,1;1 0;0 1", 2, 0, "18"),
        ("2,2;1 2;2 3", 1, 3, None),
    ],
)
def test_zcount_closed_and_oracle_agree(matrix, r, alpha, expected):
    run = run_cli("zcount", "--matrix", matrix, "--r", r, "--alpha", alpha)
    assert run.exit_code == 0, run.output
    closed, oracle = run.lines
    assert closed.startswith("closed_form: ")
    assert oracle.startswith("oracle: ")
    assert closed.split(": ")[1] == oracle.split(": ")[1]
    if expected is not None:
        assert closed.split(": ")[1] == expected


def test_zcount_single_method():
    run = run_cli("zcount", "--matrix", "3,1;1 0;0 1", "--r", 2, "--alpha", 0, "--method", "closed")
    assert run.lines == ["18"]
    run = run_cli("zcount", "--matrix", "3,1;1 0;0 1", "--r", 2, "--alpha", 0, "--method", "oracle")
    assert run.lines == ["18"]


def test_zcount_json():
    run = run_cli("zcount", "--matrix", "2,1;0 1;0 0", "--r", 1, "--alpha", 1, "--json")
    records = [json.loads(line) for line in run.lines]
    assert [r["method"] for r in records] == ["closed_form", "oracle"]
    assert {r["result"] for r in records} == {"4"}
    assert records[0]["query"]["k"] == 1


def test_zcount_skips_oracle_above_guard():
    identity = "2,1;" + ";".join(" ".join("1" if i == j else "0" for j in range(6)) for i in range(6))
    run = run_cli("zcount", "--matrix", identity, "--r", 3, "--alpha", 0)
    assert run.exit_code == 0, run.output
    assert "oracle skipped" in run.output
    count = run_cli("count", "--n", 6, "--r", 3, "--k", 6, "--q", 2, "--alpha", 0)
    assert count.lines[-1] in run.lines


def test_zcount_reads_matrix_file(tmp_path):
    path = tmp_path / "a.txt"
    path.write_text("2,1;0 1;0 0\n")
    run = run_cli("zcount", "--matrix", str(path), "--r", 1, "--alpha", 1, "--method", "closed")
    assert run.lines == ["4"]


@pytest.mark.parametrize("matrix", ["garbage", "2,1;0 1;0", "2,1;0 2;0 0", "4,1;0 1;0 0", "2;0 1;0 0", "2,1;0 1"])
def test_zcount_parse_errors_exit_2(matrix):
    run = run_cli("zcount", "--matrix", matrix, "--r", 1, "--alpha", 0)
    assert run.exit_code == 2


def test_zcount_bad_alpha_exits_2():
    assert run_cli("zcount", "--matrix", "2,1;0 1;0 0", "--r", 1, "--alpha", 5).exit_code == 2


def test_zcount_disagreement_exits_1(monkeypatch):
    monkeypatch.setattr(commands.command, "count_Z", lambda A, r, alpha: 0)
    run = run_cli("zcount", "--matrix", "2,1;0 1;0 0", "--r", 1, "--alpha", 1)
    assert run.exit_code == 1
    assert "oracle counts 4" in run.output


# ============================================================================
# gf-info
# ============================================================================


def test_gf_info_text():
    run = run_cli("gf-info", "--p", 2, "--m", 2)
    assert run.exit_code == 0
    assert run.lines[0] == "GF(2^2) = GF(2)[t]/(t^2 + t + 1)"
    assert run.lines[-1].split() == ["3", "[1,", "1]", "t", "+", "1"]


def test_gf_info_json_and_limit():
    data = json.loads(run_cli("gf-info", "--p", 3, "--m", 2, "--json").lines[0])
    assert data["modulus"] == [1, 0, 1]
    assert len(data["elements"]) == 9
    assert data["elements"][1] == {"index": 1, "coeffs": [1, 0], "poly": "1"}
    run = run_cli("gf-info", "--p", 2, "--m", 3, "--limit", 2)
    assert run.lines[-1] == "... 6 more (raise --limit)"


def test_gf_info_rejects_non_prime():
    assert run_cli("gf-info", "--p", 6).exit_code == 2


# ============================================================================
# parsers
# ============================================================================


def test_parse_matrix():
    A = parse_matrix("2,2;0 1;2 3")
    assert (A.ctx.q, A.n_rows) == (4, 2)
    assert A.rows() == [[0, 1], [2, 3]]
    with pytest.raises(MatrixParseError):
        parse_matrix("2,1;0 x;0 0")


def test_parse_q_list():
    assert parse_q_list("2,3,5") == (2, 3, 5)
    assert parse_q_list(" 4, 9 ") == (4, 9)
    with pytest.raises(ArgumentParseError):
        parse_q_list("2,6")
    with pytest.raises(ArgumentParseError):
        parse_q_list("")
