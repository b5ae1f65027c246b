from typing import NamedTuple

from click.testing import CliRunner

from commands.engine import main


class CliRun(NamedTuple):
    exit_code: int
    lines: list[str]
    output: str


def run_cli(*args: str) -> CliRun:
    """
    Run the command group in-process and capture its output.

    `lines` holds the non-empty output lines; `output` the raw text (which
    includes stderr, so error messages can be asserted on).
    """
    result = CliRunner().invoke(main, [str(a) for a in args])
    text = result.output
    lines = [ln.rstrip("\r") for ln in text.splitlines() if ln.strip()]
    return CliRun(result.exit_code, lines, text)
