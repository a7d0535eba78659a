"""Relation checks and report records shared by all verification suites."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

__all__ = ["Check", "CheckResult", "run_check"]


@dataclass
class Check:
    """One relation instance: ``fn(v)`` returns ``LHS - RHS`` applied to ``v``.

    ``fn`` may instead return an arbitrary payload when ``compare`` is given;
    ``compare(payload)`` then yields ``None`` on success or a discrepancy text.
    """

    group: str
    relation: str
    params: dict
    module: str
    fn: Callable
    states: list = field(default_factory=list)
    compare: Optional[Callable] = None
    note: str = ""

    def sort_key(self):
        return (self.group, self.relation, sorted((k, str(v)) for k, v in self.params.items()), self.module)


@dataclass
class CheckResult:
    group: str
    relation: str
    params: dict
    module: str
    checked: int
    failures: list
    note: str = ""

    @property
    def status(self) -> str:
        return "fail" if self.failures else "pass"

    def as_dict(self, max_failures: int = 5) -> dict:
        d = {
            "group": self.group,
            "relation": self.relation,
            "parameters": {k: str(v) for k, v in sorted(self.params.items())},
            "module": self.module,
            "states_checked": self.checked,
            "status": self.status,
        }
        if self.failures:
            d["failures"] = [
                {"state": s, "discrepancy": t} for s, t in self.failures[:max_failures]
            ]
            d["failure_count"] = len(self.failures)
        if self.note:
            d["note"] = self.note
        return d


def run_check(check: Check, render_state=str) -> CheckResult:
    failures = []
    for st in check.states:
        try:
            out = check.fn(st)
        except (ValueError, ArithmeticError) as exc:
            failures.append((render_state(st), "error: %s" % exc))
            continue
        if check.compare is not None:
            bad = check.compare(out)
        else:
            bad = None if out.is_zero() else out.render()
        if bad is not None:
            failures.append((render_state(st), bad))
    return CheckResult(check.group, check.relation, check.params, check.module, len(check.states), failures, check.note)
