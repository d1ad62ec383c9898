"""Pass/fail bookkeeping shared by every inequality suite."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one family of inequality checks.

    ``worst_margin`` is the smallest ``rhs - lhs`` seen (for ``lhs <= rhs``
    style checks); a negative value beyond the tolerance is a failure.
    ``inconclusive`` counts strict inequalities whose margin fell inside the
    rounding guard band.
    """

    name: str
    n_checks: int
    n_failed: int
    n_inconclusive: int
    worst_margin: float
    worst_case: str = ""
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.n_failed == 0

    @property
    def status(self) -> str:
        if self.n_failed:
            return FAIL
        if self.n_inconclusive:
            return INCONCLUSIVE
        return PASS

    def summary(self) -> str:
        return (f"{self.name}: {self.status} ({self.n_checks} checks, "
                f"{self.n_failed} failed, {self.n_inconclusive} inconclusive, "
                f"worst margin {self.worst_margin:.3e}{' at ' + self.worst_case if self.worst_case else ''})")


def check_leq(name, lhs, rhs, *, strict=False, rel_tol=0.0, abs_tol=0.0,
              labels=None, details=None) -> VerificationReport:
    """Check ``lhs <= rhs`` (or ``<`` when *strict*) elementwise.

    The tolerance band is ``abs_tol + rel_tol * max(|lhs|, |rhs|, 1)``. A
    non-strict check passes inside the band; a strict check whose margin is
    inside the band is counted as inconclusive.
    """
    lhs = np.asarray(lhs, dtype=float).ravel()
    rhs = np.asarray(rhs, dtype=float).ravel()
    lhs, rhs = np.broadcast_arrays(lhs, rhs)
    margin = rhs - lhs
    if margin.size == 0:
        return VerificationReport(name, 0, 0, 0, float("inf"), details=dict(details or {}))
    band = abs_tol + rel_tol * np.maximum(np.maximum(np.abs(lhs), np.abs(rhs)), 1.0)
    failed = margin < -band
    if strict:
        inconclusive = np.abs(margin) <= band
    else:
        inconclusive = np.zeros_like(failed)
    i = int(np.argmin(margin))
    where = ""
    if labels is not None:
        where = str(labels(i) if callable(labels) else labels[i])
    return VerificationReport(
        name=name,
        n_checks=int(margin.size),
        n_failed=int(failed.sum()),
        n_inconclusive=int(inconclusive.sum()),
        worst_margin=float(margin[i]),
        worst_case=where,
        details=dict(details or {}),
    )


def combine(name: str, reports: list[VerificationReport], **details) -> VerificationReport:
    """Fold several reports into one; the worst margin wins."""
    if not reports:
        return VerificationReport(name, 0, 0, 0, float("inf"), details=details)
    worst = min(reports, key=lambda r: r.worst_margin)
    merged = dict(details)
    merged["parts"] = [r.summary() for r in reports]
    return VerificationReport(
        name=name,
        n_checks=sum(r.n_checks for r in reports),
        n_failed=sum(r.n_failed for r in reports),
        n_inconclusive=sum(r.n_inconclusive for r in reports),
        worst_margin=worst.worst_margin,
        worst_case=f"{worst.name}: {worst.worst_case}" if worst.worst_case else worst.name,
        details=merged,
    )
