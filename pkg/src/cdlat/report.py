"""Verification reports with per-check statuses."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Any

STATUSES = ("pass", "fail", "vacuous", "skipped")


@dataclass
class Check:
    id: str
    status: str
    details: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"id": self.id, "status": self.status, "details": self.details}


@dataclass
class VerificationReport:
    target: str
    tier: str = "full"
    checks: list[Check] = field(default_factory=list)
    stats: dict[str, Any] = field(default_factory=dict)
    _start: float = field(default_factory=time.perf_counter, repr=False)

    def add(self, check_id: str, status: bool | str, **details: Any) -> Check:
        if isinstance(status, bool):
            status = "pass" if status else "fail"
        if status not in STATUSES:
            raise ValueError(f"unknown status {status!r}")
        c = Check(check_id, status, details)
        self.checks.append(c)
        return c

    def extend(self, other: "VerificationReport", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.id, c.status, c.details))

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == "fail"]

    @property
    def passed(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.passed

    def status_of(self, check_id: str) -> str:
        for c in self.checks:
            if c.id == check_id:
                return c.status
        raise KeyError(check_id)

    def finish(self) -> "VerificationReport":
        self.stats["seconds"] = round(time.perf_counter() - self._start, 3)
        return self

    def to_dict(self) -> dict:
        return {
            "target": self.target,
            "tier": self.tier,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "stats": self.stats,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, default=_jsonable) + "\n"

    def summary(self) -> str:
        counts: dict[str, int] = {}
        for c in self.checks:
            counts[c.status] = counts.get(c.status, 0) + 1
        parts = ", ".join(f"{k}={v}" for k, v in sorted(counts.items()))
        verdict = "PASS" if self.passed else "FAIL"
        return f"{verdict} {self.target} [tier={self.tier}] {parts}"


def _jsonable(obj: Any) -> Any:
    if hasattr(obj, "item"):
        return obj.item()
    if isinstance(obj, (set, frozenset, tuple)):
        return list(obj)
    return str(obj)
