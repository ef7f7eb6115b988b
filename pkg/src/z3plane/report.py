"""Check records shared by every verification suite."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Dict, List, Optional

from .algebra import Element
from .scalar import Scalar
from .tensor import TensorElement

PASS = "pass"
FAIL = "fail"
EXPECTED_NONZERO = "expected-nonzero"


@dataclass
class Check:
    suite: str
    id: str
    paper_ref: str
    status: str
    residual: Optional[str] = None
    ms: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status in (PASS, EXPECTED_NONZERO)

    def to_json(self) -> Dict[str, Any]:
        d = asdict(self)
        if d["residual"] is None:
            del d["residual"]
        d["ms"] = round(self.ms, 3)
        return d


def _is_zero(value: Any) -> bool:
    if isinstance(value, (Element, TensorElement, Scalar)):
        return value.is_zero()
    if isinstance(value, (int, float)):
        return value == 0
    return not value


class Suite:
    """Collects :class:`Check` records; each helper times and evaluates a thunk."""

    def __init__(self, name: str) -> None:
        self.name = name
        self.checks: List[Check] = []

    def _run(self, check_id: str, paper_ref: str, fn: Callable[[], Any]):
        t0 = time.perf_counter()
        try:
            value = fn()
            error = None
        except Exception as exc:  # a crashing identity is a failed identity
            value, error = None, f"{type(exc).__name__}: {exc}"
        return value, error, (time.perf_counter() - t0) * 1000

    def zero(self, check_id: str, paper_ref: str, fn: Callable[[], Any]) -> Check:
        """Pass iff ``fn()`` is zero (Element, TensorElement, Scalar or number)."""
        value, error, ms = self._run(check_id, paper_ref, fn)
        if error:
            c = Check(self.name, check_id, paper_ref, FAIL, error, ms)
        elif _is_zero(value):
            c = Check(self.name, check_id, paper_ref, PASS, None, ms)
        else:
            c = Check(self.name, check_id, paper_ref, FAIL, str(value), ms)
        self.checks.append(c)
        return c

    def nonzero(self, check_id: str, paper_ref: str, fn: Callable[[], Any]) -> Check:
        """An identity expected to fail: status is ``expected-nonzero`` iff the residual is nonzero."""
        value, error, ms = self._run(check_id, paper_ref, fn)
        if error:
            c = Check(self.name, check_id, paper_ref, FAIL, error, ms)
        elif _is_zero(value):
            c = Check(self.name, check_id, paper_ref, FAIL, "0 (expected a nonzero residual)", ms)
        else:
            c = Check(self.name, check_id, paper_ref, EXPECTED_NONZERO, str(value), ms)
        self.checks.append(c)
        return c

    def erratum(self, check_id: str, paper_ref: str, fn: Callable[[], Any], expected: Any) -> Check:
        """A misprinted identity: ``expected-nonzero`` iff the residual equals the pinned nonzero ``expected``."""
        value, error, ms = self._run(check_id, paper_ref, fn)
        if error:
            c = Check(self.name, check_id, paper_ref, FAIL, error, ms)
        elif _is_zero(value) or value != expected:
            c = Check(self.name, check_id, paper_ref, FAIL, f"{value} (pinned erratum residual is {expected})", ms)
        else:
            c = Check(self.name, check_id, paper_ref, EXPECTED_NONZERO, str(value), ms)
        self.checks.append(c)
        return c

    def true(self, check_id: str, paper_ref: str, fn: Callable[[], Any]) -> Check:
        """Pass iff ``fn()`` is truthy; its ``str`` becomes the residual on failure."""
        value, error, ms = self._run(check_id, paper_ref, fn)
        if error:
            c = Check(self.name, check_id, paper_ref, FAIL, error, ms)
        elif value:
            c = Check(self.name, check_id, paper_ref, PASS, None, ms)
        else:
            c = Check(self.name, check_id, paper_ref, FAIL, str(value), ms)
        self.checks.append(c)
        return c


def all_ok(checks: List[Check]) -> bool:
    return all(c.ok for c in checks)


def sort_checks(checks: List[Check]) -> List[Check]:
    return sorted(checks, key=lambda c: (c.suite, c.id))
