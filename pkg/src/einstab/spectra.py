"""Extremal eigenvalue functions of the curvature actions on a homogeneous model."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import tensor
from .catalog import ManifoldModel, require_valid
from .linalg import compress, symmetric_eigen, top_eigenvalue


@dataclass(frozen=True)
class SpectralSummary:
    r_sup: float
    w_sup: float
    w_lq: float
    sectional_min: float | None = None
    sectional_max: float | None = None


def traceless_operator(T, validate: bool = True) -> np.ndarray:
    """Induced action on traceless symmetric 2-tensors, in an orthonormal basis of that space."""
    T = tensor.check_curvature(T) if validate else T
    M = tensor.sym2_operator(T, validate=False)
    return compress(M, tensor.traceless_complement(T.shape[0]))


def r_function(R, validate: bool = True) -> float:
    """Largest eigenvalue of the curvature action on traceless symmetric 2-tensors."""
    return top_eigenvalue(traceless_operator(R, validate))


def w_function(R, validate: bool = True) -> float:
    """Largest eigenvalue of the Weyl action on all symmetric 2-tensors."""
    W = tensor.weyl_part(R, validate)
    return top_eigenvalue(tensor.sym2_operator(W, validate=False))


def eigen_functions(model: ManifoldModel, sectional: bool = False, seed: int = 0) -> SpectralSummary:
    require_valid(model)
    R = model.curvature
    r_sup = r_function(R, validate=False)
    w_sup = w_function(R, validate=False)
    # clip rounding noise; the Weyl action is trace-free, so w_sup >= 0
    w_sup = max(w_sup, 0.0)
    smin = smax = None
    if sectional:
        smin, smax = sectional_range(model, seed=seed)
    return SpectralSummary(
        r_sup=r_sup, w_sup=w_sup, w_lq=w_sup * model.volume ** (2.0 / model.dim),
        sectional_min=smin, sectional_max=smax,
    )


def _sectional(R, X, Y) -> float:
    return float(np.einsum("ijkl,i,j,k,l->", R, X, Y, Y, X))


def _refine(R, X, Y, sense: float, steps: int):
    """Alternating exact maximisation of sense*K over X (Y fixed) and Y (X fixed)."""
    n = R.shape[0]
    for _ in range(steps):
        for _swap in range(2):
            # K as a quadratic form in X for fixed Y: A[a, l] = R(a, Y, Y, l)
            A = sense * np.einsum("ajkl,j,k->al", R, Y, Y)
            A = 0.5 * (A + A.T)
            P = np.eye(n) - np.outer(Y, Y)
            # the penalty pushes the Y direction to the bottom of the spectrum
            big = 1e3 * (1.0 + np.abs(A).max())
            _, V = np.linalg.eigh(P @ A @ P - big * np.outer(Y, Y))
            cand = V[:, -1]
            cand = cand - (cand @ Y) * Y
            nrm = np.linalg.norm(cand)
            if nrm > 1e-12:
                cand /= nrm
                if sense * _sectional(R, cand, Y) >= sense * _sectional(R, X, Y):
                    X = cand
            X, Y = Y, X
    return X, Y


def sectional_range(model_or_R, samples: int = 200, seed: int = 0,
                    refine_steps: int = 50, starts: int = 5) -> tuple[float, float]:
    """
    Estimated minimum and maximum of the sectional curvature at the basepoint.

    Random orthonormal pairs are drawn from a seeded generator; the best
    ``starts`` candidates for each extremum are then refined by alternating
    eigenvector updates.  The result is an estimate, not a certified bound.
    """
    R = model_or_R.curvature if isinstance(model_or_R, ManifoldModel) else np.asarray(model_or_R)
    n = R.shape[0]
    samples = max(int(samples), 100)
    rng = np.random.default_rng(seed)
    Z = rng.standard_normal((samples, n, 2))
    Qs, _ = np.linalg.qr(Z)
    X, Y = Qs[:, :, 0], Qs[:, :, 1]
    vals = np.einsum("ijkl,si,sj,sk,sl->s", R, X, Y, Y, X)
    out = []
    for sense in (-1.0, 1.0):
        order = np.argsort(sense * vals, kind="stable")[::-1][:starts]
        best = -np.inf
        for s in order:
            x, y = _refine(R, X[s].copy(), Y[s].copy(), sense, refine_steps)
            best = max(best, sense * _sectional(R, x, y))
        out.append(sense * best)
    return out[0], out[1]


def eigenvalues(A) -> np.ndarray:
    return symmetric_eigen(A)
