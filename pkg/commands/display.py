from __future__ import annotations

import sys
from typing import Optional, TextIO


class Display:
    """
    Where user-facing output goes: data to stdout, diagnostics to stderr.

    With no streams given it calls print() without binding one, so output
    follows whatever sys.stdout/sys.stderr are at call time (click's
    CliRunner and contextlib.redirect_stdout both rely on this).
    """

    def __init__(self, out: TextIO | None = None, err: TextIO | None = None):
        self._out: Optional[TextIO] = out
        self._err: Optional[TextIO] = err

    def write(self, msg: str = ""):
        if self._out is None:
            print(msg)
        else:
            print(msg, file=self._out)

    def error(self, msg: str = ""):
        print(msg, file=self._err if self._err is not None else sys.stderr)


display = Display()
