from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

# Largest oracle grid the bare `verify` runs: 3^9 matrices per (n, k) at q = 3.
DEFAULT_MAX_N = 3
DEFAULT_Q_LIST = (2, 3)
# Random A matrices drawn per (n, q) for the tr(AX) checks.
Z_SAMPLES = 50
# Those checks only run where q^{n^2} is at most this.
Z_SAMPLE_LIMIT = 2**12

SUITES = ("identities", "oracle")


@dataclass
class CheckContext:
    max_n: int = DEFAULT_MAX_N
    q_list: Tuple[int, ...] = DEFAULT_Q_LIST
    workers: int = 1
    seed: int = 0


@dataclass
class CheckResult:
    suite: str
    name: str
    passed: bool
    counterexample: Optional[str] = None
    elapsed_ms: int = 0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.suite}.{self.name} ({self.elapsed_ms} ms)"
        if self.counterexample:
            text += f"\n    counterexample: {self.counterexample}"
        return text


# A handler returns None when the property holds, otherwise a description
# of the first counterexample found.
CheckHandler = Callable[[CheckContext], Optional[str]]


@dataclass
class CheckDef:
    suite: str
    name: str
    handler: CheckHandler
    help: str


@dataclass
class CheckRegistry:
    _checks: Dict[str, Dict[str, CheckDef]] = field(default_factory=dict)

    def register(self, suite: str, name: str, handler: CheckHandler, help: str) -> None:
        suite = (suite or "").strip().lower()
        if suite not in SUITES:
            raise ValueError(f"unknown suite {suite!r}; expected one of {SUITES}")
        if not name:
            raise ValueError("Check name must be a non-empty string")
        self._checks.setdefault(suite, {})[name] = CheckDef(suite, name, handler, help)

    def checks(self, suite: str = "all") -> List[CheckDef]:
        suites = SUITES if suite == "all" else (suite,)
        out: List[CheckDef] = []
        for s in suites:
            out.extend(self._checks.get(s, {}).values())
        return out

    def resolve(self, suite: str, name: str) -> Optional[CheckDef]:
        return self._checks.get(suite, {}).get(name)

    def run(self, suite: str, ctx: CheckContext) -> List[CheckResult]:
        results = []
        for check in self.checks(suite):
            start = time.perf_counter()
            counterexample = check.handler(ctx)
            elapsed = int((time.perf_counter() - start) * 1000)
            result = CheckResult(check.suite, check.name, counterexample is None, counterexample, elapsed)
            if result.passed:
                logging.debug(f"check {check.suite}.{check.name} passed in {elapsed} ms")
            else:
                logging.error(f"check {check.suite}.{check.name} failed: {counterexample}")
            results.append(result)
        return results

    def help_text(self) -> str:
        lines = ["Available checks:"]
        for check in self.checks():
            lines.append(f"  {check.suite}.{check.name} - {check.help}")
        return "\n".join(lines)


_REGISTRY = CheckRegistry()


def register_check(suite: str, name: str, handler: CheckHandler, help: str) -> None:
    """Add a check to the shared registry.

    Example:
        >>> register_check("identities", "rank_partition", check_rank_partition,
        ...                "sum_r a(n, r, q) = q^{n^2}")
    """
    _REGISTRY.register(suite, name, handler, help)


def default_registry() -> CheckRegistry:
    """The shared registry with both built-in suites loaded."""
    import verification.identities  # noqa: F401  (registers on import)
    import verification.oracle_checks  # noqa: F401

    return _REGISTRY
