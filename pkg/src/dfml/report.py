"""Pass/fail reports shared by the validators and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"
NA = "n/a"


@dataclass(frozen=True)
class Check:
    id: str
    status: str
    witness: tuple | None = None
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def line(self) -> str:
        text = f"{self.id}: {self.status}"
        if self.witness is not None:
            text += " witness=(" + ", ".join(str(w) for w in self.witness) + ")"
        if self.note:
            text += f" [{self.note}]"
        return text

    def to_dict(self) -> dict[str, Any]:
        return {"id": self.id, "status": self.status,
                "witness": list(self.witness) if self.witness is not None else None,
                "note": self.note}


def verdict(check_id: str, witness: tuple | None, note: str = "") -> Check:
    """A pass when ``witness`` is None, otherwise a failure carrying it."""
    return Check(check_id, PASS if witness is None else FAIL, witness, note)


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def get(self, check_id: str) -> Check:
        for c in self.checks:
            if c.id == check_id:
                return c
        raise KeyError(check_id)

    def __contains__(self, check_id: str) -> bool:
        return any(c.id == check_id for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == FAIL]

    def render(self) -> str:
        return "\n".join(c.line() for c in self.checks)

    def to_dict(self) -> dict[str, Any]:
        return {"ok": self.ok, "checks": [c.to_dict() for c in self.checks]}
