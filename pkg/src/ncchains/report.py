"""Check records and report containers shared by every verification routine."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable

PASS = "pass"
FAIL = "fail"
UNKNOWN = "unknown"


def jsonable(x: Any) -> Any:
    """Convert nested tuples, sets and Fractions into plain JSON values."""
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, bool) or x is None or isinstance(x, (int, float, str)):
        return x
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (set, frozenset)):
        from .letters import letter_key

        return [jsonable(v) for v in sorted(x, key=letter_key)]
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "to_json"):
        return x.to_json()
    return str(x)


@dataclass(frozen=True)
class Check:
    name: str
    status: str
    witness: Any = None

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_json(self) -> dict:
        verdict = None if self.status == UNKNOWN else self.status == PASS
        return {
            "name": self.name,
            "pass": verdict,
            "status": self.status,
            "witness": jsonable(self.witness),
        }


def check(name: str, ok: bool | None, witness: Any = None) -> Check:
    if ok is None:
        return Check(name, UNKNOWN, witness)
    return Check(name, PASS if ok else FAIL, None if ok else witness)


@dataclass
class Report:
    title: str
    metadata: dict = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    timings: dict = field(default_factory=dict)

    def add(self, name: str, ok: bool | None, witness: Any = None) -> Check:
        c = check(name, ok, witness)
        self.checks.append(c)
        return c

    def extend(self, checks: Iterable[Check], prefix: str = "") -> None:
        for c in checks:
            self.checks.append(Check(prefix + c.name, c.status, c.witness))

    def merge(self, other: "Report", prefix: str | None = None) -> None:
        tag = other.title + ":" if prefix is None else prefix
        self.extend(other.checks, tag)
        if other.metadata:
            self.metadata[other.title] = other.metadata

    @property
    def failed(self) -> list[Check]:
        return [c for c in self.checks if c.status == FAIL]

    @property
    def unknown(self) -> list[Check]:
        return [c for c in self.checks if c.status == UNKNOWN]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def exit_code(self, strict: bool = False) -> int:
        if self.failed:
            return 1
        if strict and self.unknown:
            return 3
        return 0

    def to_json(self, include_timings: bool = False) -> dict:
        out = {
            "title": self.title,
            "metadata": jsonable(self.metadata),
            "checks": [c.to_json() for c in self.checks],
        }
        if include_timings:
            out["timings"] = jsonable(self.timings)
        return out

    def dumps(self, include_timings: bool = False) -> str:
        return json.dumps(self.to_json(include_timings), indent=2, sort_keys=False) + "\n"

    def summary_lines(self) -> list[str]:
        return [f"{c.status.upper():7} {c.name}" for c in self.checks]
