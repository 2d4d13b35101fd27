"""Pass/fail reports shared by the checkers and the command line."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    name: str
    ok: bool
    checked: int = 0
    counterexample: dict | None = None
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        out = {"name": self.name, "ok": self.ok, "checked": self.checked}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.details:
            out["details"] = self.details
        return out


def combine(name: str, reports: list[Report]) -> Report:
    bad = next((r for r in reports if not r.ok), None)
    return Report(
        name,
        bad is None,
        sum(r.checked for r in reports),
        None if bad is None else {"check": bad.name, **(bad.counterexample or {})},
        {r.name: r.ok for r in reports},
    )
