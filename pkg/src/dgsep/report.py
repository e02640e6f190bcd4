"""Pass/fail transcripts returned by validators and decision procedures."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class Report:
    subject: str = ""
    checks: List[Check] = field(default_factory=list)
    window: Optional[range] = None

    def add(self, name: str, passed: bool, detail: str = "") -> bool:
        self.checks.append(Check(name, bool(passed), detail))
        return bool(passed)

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.detail))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        out = {"subject": self.subject, "passed": self.passed,
               "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks]}
        if self.window is not None:
            out["window"] = [self.window.start, self.window.stop - 1] if len(self.window) else []
        return out

    def __str__(self) -> str:
        head = f"{self.subject}: {'PASS' if self.passed else 'FAIL'}"
        if self.window is not None and len(self.window):
            head += f" (verified on degrees {self.window.start}..{self.window.stop - 1})"
        lines = [head]
        for c in self.checks:
            lines.append(f"  [{'ok' if c.passed else 'FAIL'}] {c.name}" + (f": {c.detail}" if c.detail else ""))
        return "\n".join(lines)
