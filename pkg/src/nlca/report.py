"""Check reports: exact pass/fail outcomes with the residual that broke them."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class CheckReport:
    check: str
    passed: bool
    axiom: str = ""
    where: tuple = ()
    residual: str = ""
    detail: str = ""
    count: int = 0
    extra: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def render(self) -> str:
        head = f"{self.check}: {self.status}"
        if self.count:
            head += f" ({self.count} cases)"
        lines = [head]
        if not self.passed:
            if self.axiom:
                lines.append(f"  axiom: {self.axiom}")
            if self.where:
                lines.append(f"  at: {_fmt_where(self.where)}")
            if self.residual:
                lines.append(f"  residual: {self.residual}")
        if self.detail:
            lines.append(f"  {self.detail}")
        return "\n".join(lines)

    def record(self) -> dict[str, Any]:
        """Structured form with a fixed field order."""
        return {
            "check": self.check,
            "status": self.status,
            "axiom": self.axiom,
            "where": [str(w) for w in self.where],
            "residual": self.residual,
            "detail": self.detail,
            "count": self.count,
        }

    def machine(self) -> str:
        return json.dumps(self.record(), separators=(",", ":"))


def _fmt_where(where) -> str:
    return "(" + ", ".join(str(w) for w in where) + ")"


def passed(check: str, count: int = 0, detail: str = "") -> CheckReport:
    return CheckReport(check, True, count=count, detail=detail)


def failed(check: str, axiom: str, where=(), residual="", detail: str = "", count: int = 0) -> CheckReport:
    return CheckReport(check, False, axiom, tuple(where), str(residual), detail, count)


def combine(check: str, reports) -> CheckReport:
    """First failure wins; otherwise a pass with the summed case count."""
    total = 0
    for r in reports:
        if not r.passed:
            return CheckReport(check, False, r.axiom, r.where, r.residual,
                               f"{r.check}: {r.detail}" if r.detail else r.check, r.count)
        total += r.count
    return CheckReport(check, True, count=total)
