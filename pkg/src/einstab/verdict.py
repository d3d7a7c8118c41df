"""Criterion and stability report records, and the verdict lattice."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

#: margins within this (scaled) band of zero count as equality
EQUALITY_TOL = 1e-12


class Verdict(str, enum.Enum):
    STRICTLY_STABLE = "StrictlyStable"
    STABLE = "Stable"
    UNSTABLE = "Unstable"
    INCONCLUSIVE = "Inconclusive"
    NONE = "None"


@dataclass
class CriterionReport:
    """
    One stability test.  ``margin = threshold - measured``; a positive margin
    means the criterion's hypothesis holds.  Lower-bound conditions are
    stored negated so that the sign convention is uniform.
    """

    criterion_id: str
    threshold: float
    measured: float
    margin: float
    strict: bool
    verdict_contribution: Verdict
    lower_bound: float | None = None
    advisory: bool = False
    applicable: bool = True
    detail: dict = field(default_factory=dict)


def not_applicable(criterion_id: str, reason: str, advisory: bool = False) -> CriterionReport:
    nan = float("nan")
    return CriterionReport(criterion_id, nan, nan, nan, False, Verdict.NONE,
                           advisory=advisory, applicable=False, detail={"reason": reason})


def graded(criterion_id: str, threshold: float, measured: float, *, on_strict: Verdict,
           on_equal: Verdict, lower_bound: float | None = None, advisory: bool = False,
           detail: dict | None = None) -> CriterionReport:
    """Build a report, classifying the margin as strict, equality, or failed."""
    margin = threshold - measured
    tol = EQUALITY_TOL * max(1.0, abs(threshold), abs(measured))
    if margin > tol:
        strict, contribution = True, on_strict
    elif margin >= -tol:
        strict, contribution = False, on_equal
    else:
        strict, contribution = False, Verdict.NONE
    return CriterionReport(criterion_id, threshold, measured, margin, strict, contribution,
                           lower_bound=lower_bound, advisory=advisory, detail=detail or {})


@dataclass
class Witness:
    h: np.ndarray
    quadratic_form_value: float


@dataclass
class StabilityReport:
    model: str
    criteria: list[CriterionReport]
    overall: Verdict
    witness: Witness | None = None
    spectra: dict = field(default_factory=dict)


def combine(criteria: list[CriterionReport], witness: Witness | None) -> Verdict:
    if witness is not None:
        return Verdict.UNSTABLE
    decisive = [c.verdict_contribution for c in criteria if not c.advisory]
    if Verdict.STRICTLY_STABLE in decisive:
        return Verdict.STRICTLY_STABLE
    if Verdict.STABLE in decisive:
        return Verdict.STABLE
    return Verdict.INCONCLUSIVE
