"""
Bochner tensor, hermitian splitting and the Kähler-Einstein stability tests.

The criterion for negative Einstein constant bounds ``sup b+`` by
``-mu (n - 2) / (n + 2)``.  The weaker-looking ``-mu n / (n + 2)`` would
ignore the skew-hermitian contribution and is not used.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import tensor
from .catalog import ManifoldModel, require_valid, unit_volume
from .errors import ConventionError, InputError
from .linalg import compress, gram_schmidt, top_eigenvalue
from .verdict import CriterionReport, Verdict, graded, not_applicable

TRACE_TOL = 1e-10


@dataclass(frozen=True)
class KahlerSpectra:
    b_sup: float
    bplus_sup: float
    b_lq: float


def _require_kahler(model: ManifoldModel) -> np.ndarray:
    if model.complex_structure is None:
        raise InputError(f"model {model.name!r} carries no complex structure")
    require_valid(model)
    return model.complex_structure


def bochner_bracket(J) -> np.ndarray:
    """``g o g + w o w - 4 w (x) w`` for the Kähler form ``w_ij = J_ji``."""
    J = np.asarray(J, dtype=float)
    n = J.shape[0]
    g = np.eye(n)
    w = J.T
    return (tensor.kulkarni_nomizu(g, g) + tensor.kulkarni_nomizu(w, w)
            - 4 * np.einsum("ij,kl->ijkl", w, w))


def bochner_general(R, J) -> np.ndarray:
    """Bochner tensor of an arbitrary Kähler curvature tensor (no Einstein assumption)."""
    R = tensor.check_curvature(R)
    J = np.asarray(J, dtype=float)
    n = R.shape[0]
    g = np.eye(n)
    w = J.T
    ric, scal, _ = tensor.contract(R, validate=False)
    # (Ric o J)(X, Y) = Ric(JX, Y)
    rj = J.T @ ric
    kn = tensor.kulkarni_nomizu
    return (R + scal / (2 * (n + 2) * (n + 4)) * bochner_bracket(J)
            - (kn(ric, g) + kn(rj, w) - 2 * np.einsum("ij,kl->ijkl", rj, w)
               - 2 * np.einsum("ij,kl->ijkl", w, rj)) / (n + 4))


def trace_residual(B) -> float:
    """Largest component over all single contractions of a 4-tensor."""
    pairs = ["iikl->kl", "ijil->jl", "ijki->jk", "ijjl->il", "ijkj->ik", "ijkk->ij"]
    return max(float(np.max(np.abs(np.einsum(p, B)))) for p in pairs)


def bochner_tensor(model: ManifoldModel) -> np.ndarray:
    J = _require_kahler(model)
    n = model.dim
    B = model.curvature - model.mu / (2 * (n + 2)) * bochner_bracket(J)
    scale = max(1.0, float(np.max(np.abs(model.curvature))))
    try:
        tensor.check_curvature(B)
    except InputError as exc:
        raise ConventionError(f"Bochner tensor fails curvature symmetries: {exc}") from exc
    res = trace_residual(B)
    if res > TRACE_TOL * scale:
        raise ConventionError(f"Bochner tensor has a non-vanishing trace ({res:.3e})")
    return B


def hermitian_split(h, J, tol: float = 1e-10) -> tuple[np.ndarray, np.ndarray]:
    """Split a traceless symmetric 2-tensor into J-invariant and J-anti-invariant parts."""
    h = tensor.as_sym2(h)
    J = np.asarray(J, dtype=float)
    if abs(np.trace(h)) > tol * max(1.0, float(np.max(np.abs(h)))):
        raise InputError("hermitian_split expects a traceless tensor")
    hJ = J.T @ h @ J
    return 0.5 * (h + hJ), 0.5 * (h - hJ)


def hermitian_basis(J) -> np.ndarray:
    """Orthonormal basis (columns, Sym^2 coordinates) of traceless hermitian tensors."""
    J = np.asarray(J, dtype=float)
    n = J.shape[0]
    Q = tensor.traceless_complement(n)
    vecs = []
    for col in Q.T:
        h1, _ = hermitian_split(tensor.sym2_from_coords(col, n), J)
        vecs.append(tensor.sym2_coords(h1))
    return gram_schmidt(vecs)


def skew_hermitian_basis(J) -> np.ndarray:
    J = np.asarray(J, dtype=float)
    n = J.shape[0]
    Q = tensor.traceless_complement(n)
    vecs = []
    for col in Q.T:
        _, h2 = hermitian_split(tensor.sym2_from_coords(col, n), J)
        vecs.append(tensor.sym2_coords(h2))
    return gram_schmidt(vecs)


def kahler_spectra(model: ManifoldModel) -> KahlerSpectra:
    B = bochner_tensor(model)
    M = tensor.sym2_operator(B, validate=False)
    b_sup = max(top_eigenvalue(M), 0.0)
    H1 = hermitian_basis(model.complex_structure)
    bplus = top_eigenvalue(compress(M, H1)) if H1.shape[1] else 0.0
    return KahlerSpectra(b_sup=b_sup, bplus_sup=bplus,
                         b_lq=b_sup * model.volume ** (2.0 / model.dim))


def _random_traceless(rng, n):
    h = rng.standard_normal((n, n))
    h = h + h.T
    h -= np.trace(h) / n * np.eye(n)
    return h / np.linalg.norm(h)


def decomposition_identity_check(model: ManifoldModel, trials: int = 100, seed: int = 0) -> dict[str, float]:
    """
    Largest residuals of the curvature-action identity relating R, B and the
    J-twisted norm of a traceless h, and of its hermitian/skew-hermitian
    specialisations.  Test tensors have unit norm; residuals are divided by
    ``max(1, |mu|)``.
    """
    J = _require_kahler(model)
    B = bochner_tensor(model)
    R = model.curvature
    n, mu = model.dim, model.mu
    c = mu / (n + 2)
    rng = np.random.default_rng(seed)
    scale = max(1.0, abs(mu))
    out = {"general": 0.0, "hermitian": 0.0, "skew_hermitian": 0.0}
    for _ in range(trials):
        h = _random_traceless(rng, n)
        lhs = float(np.sum(tensor.ring_action(R, h) * h))
        twist = float(np.sum(h * (J.T @ h @ J)))
        rhs = float(np.sum(tensor.ring_action(B, h) * h)) - c * (np.sum(h * h) - 3 * twist)
        out["general"] = max(out["general"], abs(lhs - rhs) / scale)
        h1, h2 = hermitian_split(h, J)
        for key, part, factor in (("hermitian", h1, 2.0), ("skew_hermitian", h2, -4.0)):
            lhs = float(np.sum(tensor.ring_action(R, part) * part))
            rhs = float(np.sum(tensor.ring_action(B, part) * part)) + factor * c * float(np.sum(part * part))
            out[key] = max(out[key], abs(lhs - rhs) / scale)
    return out


# -- thresholds (exact rational coefficients of mu) -----------------------


def kahler_sup_coefficient(n: int) -> Fraction:
    return Fraction(n - 2, 2 * (n + 2))


def kahler_integral_coefficient(n: int) -> Fraction:
    return Fraction(n - 2, 2 * (n + 2)) / (Fraction(4 * (n - 1), n * (n + 2)) + 1)


def kahler_negative_coefficient(n: int) -> Fraction:
    """Threshold on ``sup b+`` is ``-mu`` times this."""
    return Fraction(n - 2, n + 2)


def kahler_criteria(model: ManifoldModel) -> list[CriterionReport]:
    _require_kahler(model)
    n, mu = model.dim, model.mu
    sp = kahler_spectra(model)
    detail = {"b_sup": sp.b_sup, "bplus_sup": sp.bplus_sup, "b_lq": sp.b_lq}
    reports = []
    if mu > 0:
        reports.append(graded("kahler_sup", mu * float(kahler_sup_coefficient(n)), sp.b_sup,
                              on_strict=Verdict.STABLE, on_equal=Verdict.STABLE, detail=detail))
        mu_unit = unit_volume(model)[0].mu
        reports.append(graded("kahler_integral", mu_unit * float(kahler_integral_coefficient(n)),
                              sp.b_lq, on_strict=Verdict.STABLE, on_equal=Verdict.STABLE,
                              detail=detail))
    else:
        reports.append(not_applicable("kahler_sup", "needs mu > 0"))
        reports.append(not_applicable("kahler_integral", "needs mu > 0"))
    if mu < 0:
        reports.append(graded("kahler_negative", -mu * float(kahler_negative_coefficient(n)),
                              sp.bplus_sup, on_strict=Verdict.STRICTLY_STABLE,
                              on_equal=Verdict.NONE, detail=detail))
    else:
        reports.append(not_applicable("kahler_negative", "needs mu < 0"))
    if mu <= 0:
        # compact Kähler-Einstein with mu <= 0 is always stable
        reports.append(CriterionReport("kahler_nonpositive", 0.0, mu, -mu, mu < 0, Verdict.STABLE,
                                       detail={"mu": mu}))
    else:
        reports.append(not_applicable("kahler_nonpositive", "needs mu <= 0"))
    return reports
