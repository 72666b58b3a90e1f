"""Check reports: an ordered list of named verdicts with witnesses."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .linalg import Comparison
from .scalars import QQ, Field


def _fmt_vec(vec: dict, fld: Field) -> dict:
    return {",".join(map(str, k)) or "1": fld.format(v) for k, v in sorted(vec.items())}


@dataclass
class Check:
    id: str
    passed: bool
    witness: dict | None = None
    note: str | None = None

    def to_dict(self) -> dict:
        d: dict[str, Any] = {"id": self.id, "pass": self.passed}
        if self.witness is not None:
            d["witness"] = self.witness
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class AxiomReport:
    target: str = ""
    checks: list = field(default_factory=list)
    derived: dict = field(default_factory=dict)
    field: Field = QQ

    def add(self, id: str, outcome, labels=None, note=None) -> bool:
        """Record a verdict.  ``outcome`` is a bool or a ``Comparison``."""
        witness = None
        if isinstance(outcome, Comparison):
            ok = outcome.equal
            if not ok:
                witness = {
                    "basis": list(outcome.column),
                    "lhs": _fmt_vec(outcome.left, self.field),
                    "rhs": _fmt_vec(outcome.right, self.field),
                }
                if labels is not None:
                    witness["labels"] = [labels[i] for i in outcome.column]
        elif isinstance(outcome, tuple):
            ok, witness = bool(outcome[0]), outcome[1]
        else:
            ok = bool(outcome)
        self.checks.append(Check(id, ok, witness, note))
        return ok

    def extend(self, other: "AxiomReport", prefix: str = "") -> "AxiomReport":
        for c in other.checks:
            self.checks.append(Check(prefix + c.id, c.passed, c.witness, c.note))
        for k, v in other.derived.items():
            self.derived.setdefault(k, v)
        return self

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self):
        return self.passed

    @property
    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, id: str) -> Check:
        for c in self.checks:
            if c.id == id:
                return c
        raise KeyError(id)

    def __contains__(self, id: str) -> bool:
        return any(c.id == id for c in self.checks)

    @property
    def ids(self) -> list:
        return [c.id for c in self.checks]

    def to_dict(self) -> dict:
        return {
            "target": self.target,
            "checks": [c.to_dict() for c in self.checks],
            "derived": self.derived,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False)

    def render_text(self) -> str:
        lines = [f"target: {self.target}"]
        for c in self.checks:
            line = f"  [{'PASS' if c.passed else 'FAIL'}] {c.id}"
            if c.note:
                line += f"  ({c.note})"
            lines.append(line)
            if c.witness is not None:
                lines.append(f"         witness: {json.dumps(c.witness, ensure_ascii=False, sort_keys=True)}")
        for k, v in self.derived.items():
            lines.append(f"  {k}: {v}")
        lines.append("result: " + ("all checks pass" if self.passed else f"{len(self.failures)} failing"))
        return "\n".join(lines)

    def summary(self) -> str:
        bad = ", ".join(c.id for c in self.failures)
        return f"{self.target}: " + ("ok" if self.passed else f"failed [{bad}]")
