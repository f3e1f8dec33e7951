from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any

WITNESS_CAP = 100


@dataclass
class CheckReport:
    """Outcome of running one verification over a stream of instances."""

    check: str
    instances: int = 0
    violations: int = 0
    witnesses: list[Any] = field(default_factory=list)
    ms: float = 0.0
    notes: list[str] = field(default_factory=list)
    results: Any = None

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def tick(self, n: int = 1) -> None:
        self.instances += n

    def fail(self, witness: Any) -> None:
        self.violations += 1
        if len(self.witnesses) < WITNESS_CAP:
            self.witnesses.append(witness)

    def note(self, text: str) -> None:
        self.notes.append(text)

    def merge(self, other: CheckReport) -> CheckReport:
        merged = CheckReport(
            self.check,
            self.instances + other.instances,
            self.violations + other.violations,
            (self.witnesses + other.witnesses)[:WITNESS_CAP],
            self.ms + other.ms,
            self.notes + other.notes,
            self.results if other.results is None else other.results,
        )
        return merged

    def to_json(self) -> dict:
        out = {
            "check": self.check,
            "instances": self.instances,
            "violations": self.violations,
            "witnesses": self.witnesses,
            "ms": round(self.ms, 3),
        }
        if self.notes:
            out["notes"] = self.notes
        if self.results is not None:
            out["results"] = self.results
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2, default=str)

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.check}: {self.instances} instances, {self.violations} violations, {self.ms:.0f} ms"


@contextmanager
def timed(report: CheckReport):
    start = time.perf_counter()
    try:
        yield report
    finally:
        report.ms += (time.perf_counter() - start) * 1000.0
