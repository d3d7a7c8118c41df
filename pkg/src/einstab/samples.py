"""Seeded random algebraic curvature tensors for property checks."""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .catalog import fubini_study_curvature, standard_complex_structure
from .errors import InputError


def project_curvature(T) -> np.ndarray:
    """Orthogonal projection of a 4-tensor onto algebraic curvature tensors."""
    T = np.asarray(T, dtype=float)
    Q = (T - T.swapaxes(-4, -3) - T.swapaxes(-2, -1) + T.swapaxes(-4, -3).swapaxes(-2, -1)) / 4
    Q = (Q + np.moveaxis(Q, (-4, -3), (-2, -1))) / 2
    # on tensors with the above symmetries the cyclic mean is the alternation
    cyc = (Q + np.moveaxis(Q, (-4, -3, -2), (-3, -2, -4)) + np.moveaxis(Q, (-4, -3, -2), (-2, -4, -3))) / 3
    return Q - cyc


def random_curvature(rng: np.random.Generator, n: int) -> np.ndarray:
    return project_curvature(rng.standard_normal((n, n, n, n)))


def random_einstein(rng: np.random.Generator, n: int, mu: float | None = None) -> np.ndarray:
    """Random Einstein curvature tensor: random Weyl part plus a constant-curvature part."""
    from .tensor import kulkarni_nomizu, weyl_part

    if mu is None:
        mu = float(rng.uniform(-3, 3))
    g = np.eye(n)
    W = weyl_part(random_curvature(rng, n), validate=False)
    return W + mu / (2 * (n - 1)) * kulkarni_nomizu(g, g)


def _null_space(A, tol=1e-10) -> np.ndarray:
    _, s, Vt = np.linalg.svd(A)
    rank = int(np.sum(s > tol * max(1.0, s[0] if s.size else 1.0)))
    return Vt[rank:].T


@lru_cache(maxsize=None)
def kahler_einstein_basis(m: int) -> np.ndarray:
    """
    Orthonormal basis (columns, flattened n^4) of trace-free-Ricci Kähler curvature
    tensors for the standard complex structure on R^{2m}.
    """
    if not 1 <= m <= 3:
        raise InputError("Kähler-Einstein sampling supports complex dimension 1..3")
    n = 2 * m
    N = n ** 4
    P = project_curvature(np.eye(N).reshape(N, n, n, n, n)).reshape(N, N)
    evals, evecs = np.linalg.eigh(0.5 * (P + P.T))
    U = evecs[:, evals > 0.5]
    J = standard_complex_structure(m)
    Ut = U.T.reshape(-1, n, n, n, n)
    KU = np.einsum("ai,bj,sabkl->sijkl", J, J, Ut).reshape(-1, N).T
    M = U.T @ (0.5 * (U + KU))
    ev, V = np.linalg.eigh(0.5 * (M + M.T))
    # compression of a projector: only eigenvalue 1 lies in the intersection
    K = U @ V[:, ev > 1 - 1e-9]
    Kt = K.T.reshape(-1, n, n, n, n)
    ric = np.einsum("sijki->sjk", Kt)
    trfree = ric - np.einsum("sii->s", ric)[:, None, None] * np.eye(n) / n
    basis = K @ _null_space(trfree.reshape(len(Kt), -1).T)
    basis.setflags(write=False)
    return basis


def random_kahler_einstein(rng: np.random.Generator, m: int, mu: float | None = None,
                           bochner_scale: float = 1.0) -> tuple[np.ndarray, float]:
    """
    Random Kähler-Einstein curvature tensor for the standard J on R^{2m}.

    The result is ``(mu / (2m + 2)) * R_FS + bochner_scale * B`` with ``B`` a
    random element of the trace-free Kähler curvature tensors; returns ``(R, mu)``.
    """
    n = 2 * m
    if mu is None:
        mu = float(rng.uniform(-4, 4))
    basis = kahler_einstein_basis(m)
    B = (basis @ rng.standard_normal(basis.shape[1])).reshape(n, n, n, n)
    # remove the scalar part so B is totally trace-free
    Rfs = fubini_study_curvature(m)
    B -= np.sum(B * Rfs) / np.sum(Rfs * Rfs) * Rfs
    return mu / (n + 2) * Rfs + bochner_scale * B, mu
