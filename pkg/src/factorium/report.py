from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional


@dataclass
class Check:
    """One named verdict.  ``passed`` is None when the check did not apply."""

    name: str
    passed: Optional[bool]
    witness: Optional[dict[str, Any]] = None

    def __post_init__(self) -> None:
        if self.passed is False and not self.witness:
            raise ValueError(f"failed check {self.name!r} must carry a witness")

    @property
    def skipped(self) -> bool:
        return self.passed is None

    def to_json(self) -> dict[str, Any]:
        return {"name": self.name, "pass": self.passed, "witness": self.witness}


@dataclass
class VerificationReport:
    instance_id: str
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    millis: Optional[int] = None

    @property
    def ok(self) -> bool:
        return all(c.passed is not False for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.passed is False]

    def add(self, name: str, passed: Optional[bool], witness: Optional[dict[str, Any]] = None) -> Check:
        check = Check(name, passed, witness)
        self.checks.append(check)
        return check

    def extend(self, other: "VerificationReport", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.witness))
        self.notes.extend(other.notes)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)
