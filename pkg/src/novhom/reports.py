"""Structured pass/fail reports for the example runner.

Text output includes wall-clock timing per check; JSON output omits timing
so identical computations produce byte-identical reports.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
UNSTABLE = "unstable-window"


@dataclass
class Check:
    name: str
    expected: str
    computed: str
    status: str
    window: str = ""
    precision: str = ""
    seconds: float = 0.0

    def to_json(self):
        return {
            "name": self.name,
            "expected": self.expected,
            "computed": self.computed,
            "status": self.status,
            "window": self.window,
            "precision": self.precision,
        }


@dataclass
class Report:
    example: str
    checks: list = field(default_factory=list)

    def add(self, name, expected, computed, ok, window="", precision="",
            seconds=0.0, status=None):
        if status is None:
            status = PASS if ok else FAIL
        self.checks.append(
            Check(name, str(expected), str(computed), status,
                  str(window), str(precision), seconds)
        )

    @property
    def passed(self):
        return all(c.status == PASS for c in self.checks)

    def to_json(self):
        return {
            "example": self.example,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
        }


def render_text(report):
    lines = [f"example: {report.example}"]
    w = max((len(c.name) for c in report.checks), default=0)
    for c in report.checks:
        extra = []
        if c.window:
            extra.append(f"window={c.window}")
        if c.precision:
            extra.append(f"precision={c.precision}")
        extra.append(f"{c.seconds:.3f}s")
        lines.append(
            f"  {c.name:<{w}}  [{c.status}]  expected={c.expected}  "
            f"computed={c.computed}  ({', '.join(extra)})"
        )
    n_ok = sum(1 for c in report.checks if c.status == PASS)
    lines.append(
        f"result: {'PASS' if report.passed else 'FAIL'} "
        f"({n_ok}/{len(report.checks)} checks)"
    )
    return "\n".join(lines)


def render_json(report):
    return json.dumps(report.to_json(), sort_keys=True, indent=2)


def emit_report(report, fmt):
    if fmt == "json":
        return render_json(report)
    return render_text(report)
