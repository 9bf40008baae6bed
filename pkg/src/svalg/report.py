"""Shared check/report containers used by the verification suites and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional

PASS = "pass"
FAIL = "fail"
XFAIL = "expected-fail"


@dataclass(frozen=True)
class Check:
    id: str
    status: str
    witness: Optional[str] = None

    def as_dict(self):
        d = {"id": self.id, "status": self.status}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass
class SuiteReport:
    suite: str
    config: dict = field(default_factory=dict)
    checks: List[Check] = field(default_factory=list)

    def add(self, check_id: str, ok: bool, witness: str = None, expected_fail: bool = False):
        if expected_fail:
            status = XFAIL if not ok else FAIL
            if ok and witness is None:
                witness = "expected a failure here but the check passed"
        else:
            status = PASS if ok else FAIL
        self.checks.append(Check(check_id, status, witness if status != PASS else None))

    def extend(self, other: "SuiteReport"):
        self.checks.extend(other.checks)

    @property
    def unexpected_failures(self) -> List[Check]:
        return [c for c in self.checks if c.status == FAIL]

    def ok(self) -> bool:
        return not self.unexpected_failures

    def counts(self):
        out = {PASS: 0, FAIL: 0, XFAIL: 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    def as_dict(self):
        return {
            "suite": self.suite,
            "config": {k: self.config[k] for k in sorted(self.config)},
            "checks": [c.as_dict() for c in sorted(self.checks, key=lambda c: c.id)],
            "summary": self.counts(),
        }
