"""Structured findings for hypothesis-conditional expectations.

The library distinguishes implementation failures (exceptions) from
violations of expectations that are only provable under the Riemann
hypothesis or its Dirichlet generalization. Sign and window scans never
raise on a violated expectation: they return a report carrying the first
violating sample, so a pipeline can observe it (exit code 2 from the CLI)
without treating it as a crash.
"""

from __future__ import annotations

import json
import sys
from dataclasses import asdict, dataclass

import numpy as np

FINDING_KIND = "conditional_expectation_violated"


@dataclass(frozen=True)
class Finding:
    """One violated hypothesis-conditional expectation."""

    check: str  # name of the scanned statement
    kind: str  # always FINDING_KIND; errors are raised, not reported
    x: float  # first violating sample point
    value: float  # value observed there
    expectation: str  # what was expected ("< 0", "in [0.8, 1.2]", ...)
    detail: str = ""


@dataclass(frozen=True)
class ScanReport:
    """Outcome of scanning one expectation over a sample set."""

    check: str
    n_samples: int
    findings: tuple[Finding, ...]

    @property
    def clean(self) -> bool:
        return not self.findings


_SIGN_TESTS = {
    "negative": (lambda v: v < 0, "< 0"),
    "nonpositive": (lambda v: v <= 0, "<= 0"),
    "positive": (lambda v: v > 0, "> 0"),
    "nonnegative": (lambda v: v >= 0, ">= 0"),
}


def sign_scan(check: str, xs, values, expect: str = "negative") -> ScanReport:
    """Scan sampled values for a sign expectation; report all violations."""
    if expect not in _SIGN_TESTS:
        raise ValueError(f"unknown sign expectation {expect!r}")
    test, label = _SIGN_TESTS[expect]
    xs = np.asarray(xs, dtype=np.float64)
    values = np.asarray(values, dtype=np.float64)
    if xs.shape != values.shape:
        raise ValueError("xs and values must have matching shapes")
    found = [
        Finding(
            check=check,
            kind=FINDING_KIND,
            x=float(x),
            value=float(v),
            expectation=label,
        )
        for x, v in zip(xs, values)
        if not test(float(v))
    ]
    return ScanReport(check=check, n_samples=int(xs.size), findings=tuple(found))


def window_scan(
    check: str, x: float, value: float, lo: float, hi: float, detail: str = ""
) -> ScanReport:
    """Check one ratio or limit value against a configured window."""
    if not lo <= hi:
        raise ValueError("window bounds out of order")
    ok = lo <= value <= hi
    findings = ()
    if not ok:
        findings = (
            Finding(
                check=check,
                kind=FINDING_KIND,
                x=float(x),
                value=float(value),
                expectation=f"in [{lo:g}, {hi:g}]",
                detail=detail,
            ),
        )
    return ScanReport(check=check, n_samples=1, findings=findings)


def merge_reports(*reports: ScanReport) -> tuple[Finding, ...]:
    out: list[Finding] = []
    for r in reports:
        out.extend(r.findings)
    return tuple(out)


def findings_payload(reports) -> dict:
    """JSON-serializable findings block for the report stream."""
    findings = merge_reports(*reports)
    return {
        "type": "findings",
        "count": len(findings),
        "checks": [
            {"check": r.check, "n_samples": r.n_samples, "clean": r.clean}
            for r in reports
        ],
        "findings": [asdict(f) for f in findings],
    }


def emit_findings(reports, stream=None) -> int:
    """Write the findings JSON block to stderr; return the exit status.

    Returns 0 when every report is clean, 2 when any expectation was
    violated. Nothing is written when all reports are clean, keeping data
    pipelines quiet on the happy path.
    """
    reports = list(reports)
    payload = findings_payload(reports)
    if payload["count"] == 0:
        return 0
    stream = sys.stderr if stream is None else stream
    json.dump(payload, stream, indent=2)
    stream.write("\n")
    return 2
