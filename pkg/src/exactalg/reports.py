"""Pass/fail reports for relation checkers."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""
    witness: tuple | None = None


@dataclass
class CheckReport:
    checks: list = field(default_factory=list)

    def add(self, name, passed, detail="", witness=None):
        self.checks.append(Check(name, bool(passed), detail, witness))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def __bool__(self):
        return self.passed

    def __len__(self):
        return len(self.checks)

    def __str__(self):
        if self.passed:
            return "PASS (all relations)"
        lines = [f"FAIL ({len(self.failures)} of {len(self.checks)} relations)"]
        for c in self.failures:
            lines.append(f"  {c.name}: {c.detail}" if c.detail else f"  {c.name}")
        return "\n".join(lines)
