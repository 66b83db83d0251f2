"""Check records and reports shared by the checkers and the CLI."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any

SCHEMA = 1


@dataclass
class Check:
    name: str
    subject: str
    passed: bool
    detail: Any = None

    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)
    facts: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self) -> bool:
        return self.ok

    def add(self, name: str, subject: str, passed: bool, detail: Any = None) -> bool:
        self.checks.append(Check(name, subject, bool(passed), detail))
        return bool(passed)

    def extend(self, other: "Report") -> "Report":
        self.checks.extend(other.checks)
        return self

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def first_failure(self) -> Check | None:
        return next((c for c in self.checks if not c.passed), None)

    def failed_names(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {"title": self.title, "checks": [asdict(c) for c in self.checks], "facts": self.facts}

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        return cls(d["title"], [Check(**c) for c in d["checks"]], dict(d.get("facts", {})))

    def summary(self) -> str:
        n = len(self.checks)
        bad = len(self.failures())
        return f"{self.title}: {n - bad}/{n} checks pass"
