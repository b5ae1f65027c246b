"""
Output records and argument parsers for the command line.

Counts are always rendered as decimal strings, inside JSON too, since they
outgrow 64-bit integers quickly.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Any, Dict, Tuple

from algebra.qanalogs import InvalidParameter, QParam
from fields.gfq import FieldError, field_ctx
from fields.matrix import MatGF, MatrixError

METHODS = ("closed_form", "recurrence", "oracle")


class ArgumentParseError(ValueError):
    """A command-line argument could not be parsed."""

    pass


class MatrixParseError(ArgumentParseError):
    """The --matrix text or file is malformed."""

    def __init__(self, text: str, reason: str):
        self.text = text
        self.reason = reason
        super().__init__(f"cannot parse matrix {text!r}: {reason}")


@dataclass
class OutputRecord:
    query: Dict[str, Any]
    result: str
    method: str
    elapsed_ms: int = 0

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if isinstance(self.result, int):
            self.result = str(self.result)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "query": dict(self.query),
            "result": self.result,
            "method": self.method,
            "elapsed_ms": self.elapsed_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "OutputRecord":
        data = json.loads(text)
        return cls(
            query=data["query"],
            result=data["result"],
            method=data["method"],
            elapsed_ms=data["elapsed_ms"],
        )

    @property
    def value(self) -> int:
        return int(self.result)


@dataclass
class TableRecord:
    """The closed-form table for one (n, k, q): rows (r, f0, f1, g, a)."""

    query: Dict[str, Any]
    rows: list = field(default_factory=list)
    elapsed_ms: int = 0

    HEADER = ("r", "f0", "f1", "g", "a")

    def to_csv(self) -> str:
        lines = [",".join(self.HEADER)]
        lines.extend(",".join(str(v) for v in row) for row in self.rows)
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps(
            {
                "query": dict(self.query),
                "rows": [dict(zip(self.HEADER, (str(v) for v in row))) for row in self.rows],
                "method": "closed_form",
                "elapsed_ms": self.elapsed_ms,
            }
        )


def parse_matrix(text: str) -> MatGF:
    """Parse `p,m;row;row;...` with entries as element indices, e.g.
    `2,1;0 1;0 0`. A path to a file holding that line is accepted too."""
    source = text
    if os.path.isfile(text):
        with open(text, "r", encoding="utf-8") as fh:
            text = fh.read()
    text = text.strip()
    parts = [part.strip() for part in text.split(";")]
    if len(parts) < 2:
        raise MatrixParseError(source, "expected 'p,m;row1;row2;...'")
    header = [h.strip() for h in parts[0].split(",")]
    if len(header) != 2:
        raise MatrixParseError(source, f"field header {parts[0]!r} is not 'p,m'")
    try:
        p, m = int(header[0]), int(header[1])
        rows = [[int(tok) for tok in row.replace(",", " ").split()] for row in parts[1:]]
    except ValueError as e:
        raise MatrixParseError(source, str(e)) from e
    try:
        ctx = field_ctx(p, m)
        return MatGF.from_rows(ctx, rows)
    except (FieldError, MatrixError) as e:
        raise MatrixParseError(source, str(e)) from e


def parse_q_list(text: str) -> Tuple[int, ...]:
    """`2,3,5` -> (2, 3, 5); each entry must be a prime power."""
    values = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            q = int(token)
            QParam.of(q)
        except (ValueError, InvalidParameter) as e:
            raise ArgumentParseError(f"bad q-list entry {token!r}: {e}") from e
        values.append(q)
    if not values:
        raise ArgumentParseError("q-list is empty")
    return tuple(values)
