"""Curvature criteria for (strict) stability of Einstein manifolds."""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from . import tensor
from .catalog import ManifoldModel, require_valid, unit_volume
from .errors import InputError
from .kahler import kahler_criteria
from .spectra import SpectralSummary, eigen_functions, sectional_range
from .verdict import (CriterionReport, StabilityReport, Verdict, Witness, combine, graded,
                      not_applicable)

#: closed form of the Euler-characteristic criterion's left-hand side, per mu^3
SIX_DIM_COEFFICIENT = Fraction(1, 25) * (144 - Fraction(12 * 7 ** 2 * 3 ** 2, 5 * 11 ** 2))


# -- exact threshold coefficients ------------------------------------------


def weyl_sup_coefficients(n: int) -> tuple[Fraction, Fraction]:
    """Coefficients ``(a, b)`` with threshold ``max(a * mu, -b * mu)``."""
    return Fraction(n + 1, 2 * (n - 1)), Fraction(n - 2, n - 1)


def weyl_integral_coefficient(n: int) -> Fraction:
    """Unit-volume threshold on ``||w||_{n/2}`` divided by mu."""
    if n < 3:
        raise InputError(f"integral Weyl criterion needs n >= 3, got {n}")
    return Fraction(n + 1, 2 * (n - 1)) / (Fraction(4 * (n - 1), n * (n - 2)) + 1)


def weyl_isolation_coefficient(n: int) -> Fraction:
    """Below this multiple of mu the unit-volume L^{n/2} norm of W forces W = 0."""
    if n < 4:
        raise InputError(f"Weyl isolation needs n >= 4, got {n}")
    if n <= 9:
        return Fraction(n * (n - 2), 24 * (n - 1))
    return Fraction(1, 3)


def weyl_sup_lower_bound(mu: float, n: int, w_sup: float) -> float:
    """Lower bound for the bottom of the Einstein operator on TT-tensors."""
    return max(2 * mu * (n + 1) / (n - 1) - 4 * w_sup, -mu * (n - 2) / (n - 1) - w_sup)


def weyl_integral_lower_bound(mu_unit: float, n: int, w_lq: float) -> float:
    """
    Quadratic-form lower bound (per unit L^2 norm) at volume one in terms of
    ``||w||_{n/2}``; non-negative exactly when the integral criterion holds.
    """
    a = 8 * (n - 1) / (mu_unit * n * (n - 2))
    return (2 * (1 - a * w_lq) * (mu_unit * n / (n - 1) - w_lq) / (1 + a * w_lq)
            + 2 * (mu_unit / (n - 1) - w_lq))


# -- criteria ---------------------------------------------------------------


def _spectra(model: ManifoldModel, spectra: SpectralSummary | None) -> SpectralSummary:
    return spectra if spectra is not None else eigen_functions(model)


def koiso_criterion(model: ManifoldModel, spectra: SpectralSummary | None = None) -> CriterionReport:
    sp = _spectra(model, spectra)
    mu = model.mu
    return graded("koiso", max(-mu, mu / 2) + 0.0, sp.r_sup, on_strict=Verdict.STRICTLY_STABLE,
                  on_equal=Verdict.STABLE)


def weyl_sup_criterion(model: ManifoldModel, spectra: SpectralSummary | None = None) -> CriterionReport:
    sp = _spectra(model, spectra)
    n, mu = model.dim, model.mu
    a, b = weyl_sup_coefficients(n)
    return graded("weyl_sup", max(mu * float(a), -mu * float(b)), sp.w_sup,
                  on_strict=Verdict.STRICTLY_STABLE, on_equal=Verdict.STABLE,
                  lower_bound=weyl_sup_lower_bound(mu, n, sp.w_sup))


def weyl_integral_criterion(model: ManifoldModel, spectra: SpectralSummary | None = None) -> CriterionReport:
    if model.mu <= 0:
        return not_applicable("weyl_integral", "needs mu > 0")
    if model.dim < 3:
        return not_applicable("weyl_integral", "needs n >= 3")
    sp = _spectra(model, spectra)
    n = model.dim
    mu_unit = model.mu * model.volume ** (2.0 / n)
    return graded("weyl_integral", mu_unit * float(weyl_integral_coefficient(n)), sp.w_lq,
                  on_strict=Verdict.STRICTLY_STABLE, on_equal=Verdict.STABLE,
                  lower_bound=weyl_integral_lower_bound(mu_unit, n, sp.w_lq),
                  detail={"mu_unit_volume": mu_unit})


def six_dim_euler_criterion(model: ManifoldModel) -> CriterionReport:
    if model.dim != 6:
        return not_applicable("thm_1_6", "needs n = 6")
    if model.mu <= 0:
        return not_applicable("thm_1_6", "needs mu > 0")
    if model.euler_char is None:
        return not_applicable("thm_1_6", "Euler characteristic unknown")
    unit, c = unit_volume(model)
    W = tensor.weyl_part(unit.curvature, validate=False)
    Wh = tensor.form2_operator(W, validate=False)
    tr_W3 = float(np.trace(Wh @ Wh @ Wh))
    measured = float(SIX_DIM_COEFFICIENT) * unit.mu ** 3
    threshold = 384 * math.pi ** 3 * model.euler_char - 48 * tr_W3 * unit.volume
    # equality still yields strict stability
    return graded("thm_1_6", threshold, measured, on_strict=Verdict.STRICTLY_STABLE,
                  on_equal=Verdict.STRICTLY_STABLE,
                  detail={"rescale_factor": c, "mu_unit_volume": unit.mu, "tr_W3": tr_W3,
                          "euler_char": model.euler_char})


def pinching_criterion(model: ManifoldModel, samples: int = 200, seed: int = 0) -> CriterionReport:
    """Sectional-curvature pinching; advisory because the range is a sampled estimate."""
    n = model.dim
    kmin, kmax = sectional_range(model, samples=samples, seed=seed)
    detail = {"sectional_min": kmin, "sectional_max": kmax}
    if kmax < 0:
        return graded("pinching", 0.0, kmax, on_strict=Verdict.STRICTLY_STABLE,
                      on_equal=Verdict.NONE, advisory=True, detail=dict(detail, branch="negative"))
    if kmax <= 0:
        r = not_applicable("pinching", "sectional curvature has max 0", advisory=True)
        r.detail.update(detail)
        return r
    lower = (n - 2) / (3 * n)
    # (kmin/kmax, 1] must sit inside (lower, 1]; stored negated
    return graded("pinching", -lower, -kmin / kmax, on_strict=Verdict.STRICTLY_STABLE,
                  on_equal=Verdict.NONE, advisory=True,
                  detail=dict(detail, branch="pinched", required_ratio=lower, ratio=kmin / kmax))


def isolation_checks(model: ManifoldModel) -> list[CriterionReport]:
    """Diagnostics only: they never contribute to the verdict."""
    n = model.dim
    out = []
    if model.mu <= 0 or n < 4:
        out.append(not_applicable("isolation_weyl", "needs mu > 0 and n >= 4", advisory=True))
    else:
        unit, _ = unit_volume(model)
        W = tensor.weyl_part(unit.curvature, validate=False)
        W_norm = math.sqrt(float(np.sum(W * W)))
        r = graded("isolation_weyl", float(weyl_isolation_coefficient(n)) * unit.mu, W_norm,
                   on_strict=Verdict.NONE, on_equal=Verdict.NONE, advisory=True)
        below = r.margin >= 0
        r.detail = {"weyl_vanishes": W_norm <= 1e-8, "below_threshold": below,
                    "consistent": (not below) or W_norm <= 1e-8}
        out.append(r)
    if n == 4 and model.mu > 0:
        W = tensor.weyl_part(model.curvature, validate=False)
        Wp, _ = tensor.dual_split(W)
        Wp_int = 4 * float(np.trace(Wp @ Wp)) * model.volume
        bound = 8 / 3 * model.mu ** 2 * model.volume
        # stored negated: margin = int |W+|^2 - (8/3) mu^2 vol
        r = graded("isolation_self_dual", -bound, -Wp_int, on_strict=Verdict.NONE,
                   on_equal=Verdict.NONE, advisory=True)
        r.detail = {"W_plus_sq_integral": Wp_int, "bound": bound,
                    "W_plus_vanishes": Wp_int <= 1e-10 * max(1.0, bound)}
        out.append(r)
    elif n == 4:
        out.append(not_applicable("isolation_self_dual", "needs mu > 0", advisory=True))
    return out


def product_instability_witness(model: ManifoldModel, tol: float = 1e-10) -> Witness | None:
    """
    Parallel traceless tensor ``n_b g_a (+) (-n_a g_b)`` on a product of two
    positive Einstein factors.  Its Einstein-operator quadratic form per unit
    norm is ``-2 mu``.
    """
    if model.split is None or model.mu <= 0:
        return None
    na, nb = model.split
    h = np.zeros((model.dim, model.dim))
    h[:na, :na] = nb * np.eye(na)
    h[na:, na:] = -na * np.eye(nb)
    Rh = tensor.ring_action(model.curvature, h)
    if np.max(np.abs(Rh - model.mu * h)) > tol * max(1.0, abs(model.mu)) * np.max(np.abs(h)):
        return None
    return Witness(h=h, quadratic_form_value=-2.0 * model.mu)


CRITERIA_GROUPS = {
    "koiso": ("koiso",),
    "weyl_sup": ("weyl_sup",),
    "weyl_integral": ("weyl_integral",),
    "thm_1_6": ("thm_1_6",),
    "pinching": ("pinching",),
    "isolation": ("isolation_weyl", "isolation_self_dual"),
    "kahler_sup": ("kahler_sup",),
    "kahler_integral": ("kahler_integral",),
    "kahler_negative": ("kahler_negative", "kahler_nonpositive"),
}


def evaluate_all(model: ManifoldModel, criteria: list[str] | None = None, seed: int = 0) -> StabilityReport:
    """Run every applicable criterion (optionally filtered by group id) and combine."""
    require_valid(model)
    if model.dim < 3:
        raise InputError(f"stability criteria need n >= 3, got n = {model.dim}")
    wanted = set(CRITERIA_GROUPS) if criteria is None else set(criteria)
    unknown = wanted - set(CRITERIA_GROUPS)
    if unknown:
        raise InputError(f"unknown criteria: {', '.join(sorted(unknown))}")

    sp = eigen_functions(model)
    reports: list[CriterionReport] = []
    if "koiso" in wanted:
        reports.append(koiso_criterion(model, sp))
    if "weyl_sup" in wanted:
        reports.append(weyl_sup_criterion(model, sp))
    if "weyl_integral" in wanted:
        reports.append(weyl_integral_criterion(model, sp))
    if "thm_1_6" in wanted:
        reports.append(six_dim_euler_criterion(model))
    if "pinching" in wanted:
        reports.append(pinching_criterion(model, seed=seed))
    if "isolation" in wanted:
        reports.extend(isolation_checks(model))
    if model.complex_structure is not None and wanted & {"kahler_sup", "kahler_integral", "kahler_negative"}:
        keep = {cid for g in wanted for cid in CRITERIA_GROUPS[g]}
        reports.extend(r for r in kahler_criteria(model) if r.criterion_id in keep)

    witness = product_instability_witness(model)
    spectra = {"r_sup": sp.r_sup, "w_sup": sp.w_sup, "w_lq": sp.w_lq,
               "yamabe": model.dim * model.mu * model.volume ** (2.0 / model.dim)}
    return StabilityReport(model=model.name, criteria=reports, overall=combine(reports, witness),
                           witness=witness, spectra=spectra)
