"""Machine-readable verification reports."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable

import numpy as np

from .algebra import Polynomial, format_rational



def _jsonable(value: Any):
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, Polynomial):
        return value.to_json()
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.integer):
        return int(value)
    return value


@dataclass
class Check:
    identity: str
    params: dict
    passed: bool
    witness: dict | None = None

    def to_json(self) -> dict:
        out = {"identity": self.identity, "params": _jsonable(self.params),
               "pass": self.passed}
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        return out


@dataclass
class VerificationReport:
    checks: list = field(default_factory=list)

    def add(self, identity: str, params: dict, passed: bool, witness: dict | None = None):
        self.checks.append(Check(identity, params, bool(passed), witness))

    def extend(self, other: "VerificationReport") -> "VerificationReport":
        self.checks.extend(other.checks)
        return self

    @classmethod
    def merge(cls, reports: Iterable["VerificationReport"]) -> "VerificationReport":
        out = cls()
        for r in reports:
            out.extend(r)
        return out

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def counts(self) -> dict:
        out: dict = {}
        for c in self.checks:
            total, ok = out.get(c.identity, (0, 0))
            out[c.identity] = (total + 1, ok + c.passed)
        return out

    def to_json(self) -> dict:
        return {
            "pass": self.passed,
            "summary": {k: {"checks": t, "passed": p} for k, (t, p) in sorted(self.counts().items())},
            "checks": [c.to_json() for c in self.checks],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1)
