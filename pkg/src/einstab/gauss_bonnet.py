"""
Euler characteristic of homogeneous models from curvature at one point.

Every integral over the manifold is the pointwise value times the volume.
Three routes are provided and cross-checked against each other:

* the Pfaffian sum over pairs of permutations of ``{1, ..., n}``;
* the explicit quadratic formula in dimension four;
* the explicit cubic formulas in dimension six (general, Einstein, and the
  Weyl-operator form, the last valid when the curvature is parallel or the
  integral of ``|grad W|^2`` is supplied).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import tensor
from .catalog import ManifoldModel, require_valid
from .errors import InputError

MAX_PFAFFIAN_DIM = 6


@dataclass
class GaussBonnetReport:
    dim: int
    chi_pfaffian: float
    chi_explicit: float
    chi_expected: int | None = None
    chi_einstein: float | None = None
    chi_weyl: float | None = None
    berger_ok: bool | None = None
    components: dict[str, float] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)


def pfaffian_integrand(R, validate: bool = True) -> float:
    """
    ``sum_{s,t in S_n} sgn(s) sgn(t) prod_a R[s(2a-1), s(2a), t(2a-1), t(2a)]``.

    The inner sum over ``t`` is evaluated as a dense ``n! x n!`` product of
    gathered pair blocks, so the cost is ``(n!)^2 * n/2`` multiplications.
    """
    R = tensor.check_curvature(R) if validate else tensor.as_curv4(R)
    n = R.shape[0]
    if n % 2:
        raise InputError(f"Pfaffian integrand needs even dimension, got {n}")
    if n > MAX_PFAFFIAN_DIM:
        raise InputError(f"Pfaffian sum limited to n <= {MAX_PFAFFIAN_DIM}, got {n}")
    perms, signs = tensor.permutations_with_sign(n)
    Rm = R.reshape(n * n, n * n)
    prod = np.ones((len(perms), len(perms)))
    for a in range(n // 2):
        pair = perms[:, 2 * a] * n + perms[:, 2 * a + 1]
        prod *= Rm[pair[:, None], pair[None, :]]
    return float(signs @ prod @ signs)


def pfaffian_density(R, validate: bool = True) -> float:
    """Euler-characteristic density ``(-1)^m / (2^{3m} pi^m m!) * Psi``."""
    n = np.shape(R)[0]
    m = n // 2
    return (-1) ** m / (2 ** (3 * m) * math.pi ** m * math.factorial(m)) * pfaffian_integrand(R, validate)


def dim4_density(R, validate: bool = True) -> float:
    """``(|W|^2 + |Sc|^2 - |U|^2) / (32 pi^2)``."""
    W, Sc, U = tensor.curvature_decompose(R, validate)
    return (np.sum(W * W) + np.sum(Sc * Sc) - np.sum(U * U)) / (32 * math.pi ** 2)


def sakai_terms(R) -> dict[str, float]:
    ric, scal, norm_sq = tensor.contract(R, validate=False)
    c1, c2, tr_hat3 = tensor.cubic_invariants(R, validate=False)
    return {
        "scal": scal,
        "ric_sq": float(np.sum(ric * ric)),
        "R_sq": norm_sq,
        "ric_cubed": float(np.trace(ric @ ric @ ric)),
        "ric_ric_R": float(np.einsum("ij,kl,ikjl->", ric, ric, R)),
        "ric_R_R": float(np.einsum("ij,iklm,jklm->", ric, R, R)),
        "c1": c1,
        "c2": c2,
        "tr_hat3": tr_hat3,
    }


def sakai_integrand(t: dict[str, float]) -> float:
    s = t["scal"]
    return (s ** 3 - 12 * s * t["ric_sq"] + 3 * s * t["R_sq"] + 16 * t["ric_cubed"]
            - 24 * t["ric_ric_R"] - 24 * t["ric_R_R"] + 8 * t["c1"] - 2 * t["c2"])


def dim6_density(R, validate: bool = True) -> float:
    """General six-dimensional density (no Einstein assumption)."""
    R = tensor.check_curvature(R) if validate else R
    return sakai_integrand(sakai_terms(R)) / (384 * math.pi ** 3)


def einstein6_integrand(mu: float, t: dict[str, float]) -> float:
    return 24 * mu ** 3 - 6 * mu * t["R_sq"] + 8 * t["c1"] - 2 * t["c2"]


def weyl6_integrand(mu: float, W_sq: float, tr_W3: float) -> float:
    """Pointwise part of the Weyl-operator form; ``-2 |grad W|^2`` is added separately."""
    return -14 / 5 * mu * W_sq + 144 / 25 * mu ** 3 + 48 * tr_W3


def euler_dim4(model: ManifoldModel) -> GaussBonnetReport:
    if model.dim != 4:
        raise InputError(f"euler_dim4 needs a 4-dimensional model, got n = {model.dim}")
    require_valid(model)
    R, vol, mu = model.curvature, model.volume, model.mu
    W, Sc, U = tensor.curvature_decompose(R, validate=False)
    comps = {
        "W_sq": float(np.sum(W * W)),
        "Sc_sq": float(np.sum(Sc * Sc)),
        "U_sq": float(np.sum(U * U)),
        "R_sq": float(np.sum(R * R)),
        "mu": mu,
        "volume": vol,
    }
    chi_explicit = dim4_density(R, validate=False) * vol
    chi_einstein = (comps["W_sq"] + 8 / 3 * mu ** 2) / (32 * math.pi ** 2) * vol
    chi_pf = pfaffian_density(R, validate=False) * vol
    rep = GaussBonnetReport(dim=4, chi_pfaffian=chi_pf, chi_explicit=chi_explicit,
                            chi_expected=model.euler_char, chi_einstein=chi_einstein,
                            components=comps)
    # Einstein 4-manifolds have chi >= 0, with equality only when flat
    flat = float(np.max(np.abs(R))) <= 1e-12
    rep.berger_ok = chi_explicit > 1e-9 or (flat and abs(chi_explicit) <= 1e-9)
    return rep


def euler_dim6(model: ManifoldModel, grad_W_sq: float | None = None) -> GaussBonnetReport:
    """
    Three six-dimensional Gauss-Bonnet evaluations.

    ``grad_W_sq`` is the integral of ``|grad W|^2``; it defaults to zero for
    symmetric models and must be given otherwise for the Weyl-operator form.
    """
    if model.dim != 6:
        raise InputError(f"euler_dim6 needs a 6-dimensional model, got n = {model.dim}")
    require_valid(model)
    R, vol, mu = model.curvature, model.volume, model.mu
    t = sakai_terms(R)
    W = tensor.weyl_part(R, validate=False)
    Wh = tensor.form2_operator(W, validate=False)
    W_sq = float(np.sum(W * W))
    tr_W3 = float(np.trace(Wh @ Wh @ Wh))
    if grad_W_sq is None:
        grad_W_sq = model.grad_W_sq
    if grad_W_sq is None and model.is_symmetric:
        grad_W_sq = 0.0
    norm = 384 * math.pi ** 3
    rep = GaussBonnetReport(
        dim=6,
        chi_pfaffian=pfaffian_density(R, validate=False) * vol,
        chi_explicit=sakai_integrand(t) / norm * vol,
        chi_expected=model.euler_char,
        chi_einstein=einstein6_integrand(mu, t) / norm * vol,
        components=dict(t, mu=mu, volume=vol, W_sq=W_sq, tr_W3=tr_W3),
    )
    if grad_W_sq is None:
        rep.notes.append("Weyl-operator form withheld: curvature not parallel and grad_W_sq not supplied")
    else:
        rep.components["grad_W_sq"] = float(grad_W_sq)
        rep.chi_weyl = (weyl6_integrand(mu, W_sq, tr_W3) * vol - 2 * grad_W_sq) / norm
    return rep


def gauss_bonnet(model: ManifoldModel) -> GaussBonnetReport:
    if model.dim == 4:
        return euler_dim4(model)
    if model.dim == 6:
        return euler_dim6(model)
    if model.dim == 2:
        require_valid(model)
        chi = pfaffian_density(model.curvature, validate=False) * model.volume
        return GaussBonnetReport(dim=2, chi_pfaffian=chi, chi_explicit=chi,
                                 chi_expected=model.euler_char,
                                 components={"mu": model.mu, "volume": model.volume})
    raise InputError(f"Gauss-Bonnet is available for n in {{2, 4, 6}}, got n = {model.dim}")


def sakai_identity_residual(model: ManifoldModel) -> float:
    """``4 c1 + 2 c2 + 2 mu |R|^2``; zero whenever the curvature is parallel."""
    if not model.is_symmetric:
        raise InputError(f"model {model.name!r} is not marked symmetric (parallel curvature)")
    require_valid(model)
    c1, c2, _ = tensor.cubic_invariants(model.curvature, validate=False)
    return 4 * c1 + 2 * c2 + 2 * model.mu * float(np.sum(model.curvature ** 2))
