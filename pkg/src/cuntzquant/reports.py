"""Machine-readable verification reports.

Each identity check serializes with the schema
{identity, n, N, window, max_abs_deviation, exact, passed}; advisory checks
additionally carry "advisory": true and never affect a suite verdict.  JSON
output is canonical (sorted keys, fixed separators) so repeated runs with the
same inputs are byte-identical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass


@dataclass
class IdentityCheck:
    identity: str
    n: int
    N: int
    window: int
    max_abs_deviation: float
    exact: bool
    passed: bool
    advisory: bool = False

    def to_dict(self) -> dict:
        doc = {
            "identity": self.identity,
            "n": self.n,
            "N": self.N,
            "window": self.window,
            "max_abs_deviation": self.max_abs_deviation,
            "exact": self.exact,
            "passed": self.passed,
        }
        if self.advisory:
            doc["advisory"] = True
        return doc

    def __str__(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        if self.advisory:
            flag = f"INFO({'ok' if self.exact else 'deviates'})"
        dev = "exact" if self.exact else f"max|dev|={self.max_abs_deviation:.3e}"
        return f"[{flag}] {self.identity}: window={self.window}, {dev}"


def suite_passed(checks: list[IdentityCheck]) -> bool:
    return all(c.passed for c in checks if not c.advisory)


def suite_report(mode: str, params: dict, checks: list[IdentityCheck],
                 extra: dict | None = None) -> dict:
    doc = {
        "mode": mode,
        "params": params,
        "checks": [c.to_dict() for c in checks],
        "passed": suite_passed(checks),
    }
    if extra:
        doc.update(extra)
    return doc


def canonical_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ": "), indent=1) + "\n"


def write_json(path: str, doc: dict) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(canonical_json(doc))
