"""Deterministic certification reports.

A report is a flat list of named checks with pass flags; failing checks
carry a witness with the exact offending indices and values, enough to
replay the single check in isolation. Serialization uses a fixed key order
so identical inputs and seed produce byte-identical files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Check:
    name: str
    scope: str
    passed: bool
    witness: dict | None = None


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)
    seed: int | None = None

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def totals(self) -> dict[str, int]:
        failed = sum(1 for check in self.checks if not check.passed)
        return {
            "checks": len(self.checks),
            "passed": len(self.checks) - failed,
            "failed": failed,
        }

    def extend(self, other: "Report") -> None:
        self.checks.extend(other.checks)

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "totals": self.totals,
            "checks": [
                {
                    "name": check.name,
                    "scope": check.scope,
                    "pass": check.passed,
                    "witness": check.witness,
                }
                for check in self.checks
            ],
        }


def report_to_json(report: Report) -> str:
    """Stable serialization; byte-identical for identical reports."""
    return json.dumps(report.to_dict(), indent=2) + "\n"
