"""
Algebraic curvature tensors at a single point.

All tensors are dense numpy arrays expressed in an orthonormal frame, so the
metric is the identity and no index is ever raised or lowered.  A 4-tensor
``T`` of shape ``(n, n, n, n)`` is read as ``T[i, j, k, l] = T(e_i, e_j, e_k, e_l)``.

Conventions
-----------
* Ricci contraction on the first and last slot: ``Ric[j, k] = sum_i R[i, j, k, i]``.
* Sectional curvature of the plane spanned by orthonormal ``X, Y`` is
  ``R(X, Y, Y, X)``, so the round sphere has ``R = (K/2) g o g`` and
  ``Ric = (n - 1) K g``.
* Norms are full sums of squared components, with no combinatorial factor.
* Symmetric 2-tensors are coordinatised in the orthonormal basis
  ``e_i (x) e_i`` (i = j) and ``(e_i (x) e_j + e_j (x) e_i)/sqrt(2)`` (i < j),
  ordered lexicographically; 2-forms in the basis ``e_i ^ e_j`` (i < j).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations

import numpy as np

from .errors import CurvatureError, InputError

#: absolute tolerances, scaled by ``max(1, max|T|)`` before use
SYMMETRY_TOL = 1e-12
BIANCHI_TOL = 1e-10


def _scale(T: np.ndarray) -> float:
    return max(1.0, float(np.max(np.abs(T)))) if T.size else 1.0


def as_sym2(h, tol: float = 1e-12) -> np.ndarray:
    h = np.asarray(h, dtype=float)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise InputError(f"expected a square matrix, got shape {h.shape}")
    if np.max(np.abs(h - h.T), initial=0.0) > tol * _scale(h):
        raise InputError("matrix is not symmetric")
    return h


def as_curv4(T) -> np.ndarray:
    T = np.asarray(T, dtype=float)
    n = T.shape[0] if T.ndim else 0
    if T.ndim != 4 or T.shape != (n, n, n, n):
        raise InputError(f"expected an (n, n, n, n) array, got shape {T.shape}")
    return T


def kulkarni_nomizu(h, k) -> np.ndarray:
    """
    Kulkarni-Nomizu product of two 2-tensors.

    ``(h o k)_{ijkl} = h_il k_jk + h_jk k_il - h_ik k_jl - h_jl k_ik``.

    The component formula is applied verbatim, so antisymmetric inputs
    (Kähler forms) are accepted as well.
    """
    h = np.asarray(h, dtype=float)
    k = np.asarray(k, dtype=float)
    if h.shape != k.shape or h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise InputError(f"dimension mismatch: {h.shape} vs {k.shape}")
    return (
        np.einsum("il,jk->ijkl", h, k)
        + np.einsum("jk,il->ijkl", h, k)
        - np.einsum("ik,jl->ijkl", h, k)
        - np.einsum("jl,ik->ijkl", h, k)
    )


def symmetry_residuals(T) -> dict[str, tuple[float, tuple[int, ...]]]:
    """Worst absolute residual and its index for each curvature symmetry."""
    T = as_curv4(T)
    parts = {
        "antisymmetry_12": T + T.transpose(1, 0, 2, 3),
        "antisymmetry_34": T + T.transpose(0, 1, 3, 2),
        "pair_symmetry": T - T.transpose(2, 3, 0, 1),
        # T_ijkl + T_jkil + T_kijl
        "bianchi": T + T.transpose(2, 0, 1, 3) + T.transpose(1, 2, 0, 3),
    }
    out = {}
    for name, r in parts.items():
        if r.size == 0:
            out[name] = (0.0, ())
            continue
        idx = np.unravel_index(int(np.argmax(np.abs(r))), r.shape)
        out[name] = (float(abs(r[idx])), tuple(int(i) for i in idx))
    return out


def check_curvature(T, bianchi: bool = True) -> np.ndarray:
    """Validate curvature symmetries; return the array or raise CurvatureError."""
    T = as_curv4(T)
    if not np.all(np.isfinite(T)):
        raise CurvatureError("curvature tensor has non-finite components")
    scale = _scale(T)
    for name, (res, idx) in symmetry_residuals(T).items():
        tol = BIANCHI_TOL if name == "bianchi" else SYMMETRY_TOL
        if name == "bianchi" and not bianchi:
            continue
        if res > tol * scale:
            raise CurvatureError(
                f"{name} violated: worst residual {res:.3e} at component {idx}"
            )
    return T


def contract(R, validate: bool = True) -> tuple[np.ndarray, float, float]:
    """Return ``(Ric, scal, |R|^2)`` with ``Ric_jk = sum_i R_ijki``."""
    R = check_curvature(R) if validate else as_curv4(R)
    ric = np.einsum("ijki->jk", R)
    return ric, float(np.trace(ric)), float(np.sum(R * R))


def curvature_decompose(R, validate: bool = True) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Split ``R = W + Sc + U`` into Weyl, scalar and traceless-Ricci parts."""
    R = check_curvature(R) if validate else as_curv4(R)
    n = R.shape[0]
    if n < 3:
        raise InputError(f"Weyl decomposition needs n >= 3, got n = {n}")
    g = np.eye(n)
    ric, scal, _ = contract(R, validate=False)
    gg = kulkarni_nomizu(g, g)
    Sc = scal / (2 * n * (n - 1)) * gg
    U = kulkarni_nomizu(ric - scal / n * g, g) / (n - 2)
    return R - Sc - U, Sc, U


def weyl_part(R, validate: bool = True) -> np.ndarray:
    """Weyl tensor of ``R``; identically zero in dimension 2."""
    R = check_curvature(R) if validate else as_curv4(R)
    if R.shape[0] < 3:
        return np.zeros_like(R)
    return curvature_decompose(R, validate=False)[0]


# -- symmetric 2-tensors ---------------------------------------------------


@lru_cache(maxsize=None)
def sym2_pairs(n: int) -> tuple[tuple[int, int], ...]:
    return tuple((i, j) for i in range(n) for j in range(i, n))


@lru_cache(maxsize=None)
def _sym2_basis(n: int) -> np.ndarray:
    pairs = sym2_pairs(n)
    B = np.zeros((len(pairs), n, n))
    r = 1.0 / np.sqrt(2.0)
    for a, (i, j) in enumerate(pairs):
        if i == j:
            B[a, i, i] = 1.0
        else:
            B[a, i, j] = B[a, j, i] = r
    B.setflags(write=False)
    return B


def sym2_basis(n: int) -> np.ndarray:
    """Orthonormal basis of Sym^2 as an array of shape ``(N, n, n)``."""
    return _sym2_basis(n)


def sym2_coords(h) -> np.ndarray:
    h = np.asarray(h, dtype=float)
    return np.einsum("aij,ij->a", sym2_basis(h.shape[0]), h)


def sym2_from_coords(x, n: int) -> np.ndarray:
    return np.einsum("a,aij->ij", np.asarray(x, dtype=float), sym2_basis(n))


def ring_action(T, h) -> np.ndarray:
    """``(T h)(X, Y) = sum_ij T(e_i, X, Y, e_j) h(e_j, e_i)``."""
    return np.einsum("iabj,ji->ab", T, h)


def sym2_operator(T, validate: bool = True) -> np.ndarray:
    """Matrix of the induced action on symmetric 2-tensors, in ``sym2_basis``."""
    T = check_curvature(T) if validate else as_curv4(T)
    B = sym2_basis(T.shape[0])
    # M[a, b] = <T eta_a, eta_b>
    M = np.einsum("iabj,pji,qab->pq", T, B, B)
    return 0.5 * (M + M.T)


def traceless_complement(n: int) -> np.ndarray:
    """Orthonormal basis (columns) of the g-orthogonal complement in Sym^2 coordinates."""
    u = sym2_coords(np.eye(n)) / np.sqrt(n)
    Q, _ = np.linalg.qr(u.reshape(-1, 1), mode="complete")
    return Q[:, 1:]


# -- 2-forms ---------------------------------------------------------------


@lru_cache(maxsize=None)
def form2_pairs(n: int) -> tuple[tuple[int, int], ...]:
    return tuple((i, j) for i in range(n) for j in range(i + 1, n))


def form2_operator(T, validate: bool = True) -> np.ndarray:
    """Curvature operator on 2-forms: entry ``((i,j),(k,l)) = T(e_j, e_i, e_k, e_l)``."""
    T = check_curvature(T) if validate else as_curv4(T)
    idx = np.array(form2_pairs(T.shape[0]), dtype=int).reshape(-1, 2)
    i, j = idx[:, 0], idx[:, 1]
    M = T[j[:, None], i[:, None], i[None, :], j[None, :]]
    return 0.5 * (M + M.T)


def curvature_from_form2(M, n: int) -> np.ndarray:
    """Inverse of :func:`form2_operator` for tensors with pair and antisymmetry."""
    M = np.asarray(M, dtype=float)
    T = np.zeros((n, n, n, n))
    pairs = form2_pairs(n)
    for a, (i, j) in enumerate(pairs):
        for b, (k, l) in enumerate(pairs):
            v = -M[a, b]
            T[i, j, k, l] = v
            T[j, i, k, l] = -v
            T[i, j, l, k] = -v
            T[j, i, l, k] = v
    return T


def cubic_invariants(R, validate: bool = True) -> tuple[float, float, float]:
    """
    Cubic curvature contractions.

    Returns
    -------
    c1 : float
        ``sum R_ijkl R_imkn R_jnlm``
    c2 : float
        ``sum R_ijkl R_ijmn R_klmn``
    tr_hat3 : float
        trace of the cube of the curvature operator on 2-forms;
        ``-6 c2 == 48 tr_hat3`` holds identically.
    """
    R = check_curvature(R) if validate else as_curv4(R)
    c1 = float(np.einsum("ijkl,imkn,jnlm->", R, R, R, optimize=True))
    c2 = float(np.einsum("ijkl,ijmn,klmn->", R, R, R, optimize=True))
    Rh = form2_operator(R, validate=False)
    return c1, c2, float(np.trace(Rh @ Rh @ Rh))


# -- dimension four ---------------------------------------------------------


@lru_cache(maxsize=None)
def _hodge_star4() -> np.ndarray:
    pairs = form2_pairs(4)
    S = np.zeros((6, 6))
    for a, (i, j) in enumerate(pairs):
        k, l = (m for m in range(4) if m not in (i, j))
        # e_i ^ e_j ^ e_k ^ e_l = sign * e_1 ^ e_2 ^ e_3 ^ e_4
        sign = _perm_sign((i, j, k, l))
        S[pairs.index((k, l)), a] = sign
    S.setflags(write=False)
    return S


def hodge_star4() -> np.ndarray:
    """Hodge star on 2-forms of R^4 oriented by ``e_1^e_2^e_3^e_4``."""
    return _hodge_star4()


def _perm_sign(p) -> int:
    p = list(p)
    sign = 1
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def dual_split(W, tol: float = 1e-8) -> tuple[np.ndarray, np.ndarray]:
    """Self-dual and anti-self-dual blocks of the Weyl operator on 2-forms (n = 4)."""
    W = check_curvature(W)
    if W.shape[0] != 4:
        raise InputError(f"self-duality is defined for n = 4, got n = {W.shape[0]}")
    ric = np.einsum("ijki->jk", W)
    if np.max(np.abs(ric)) > tol * _scale(W):
        raise InputError("dual_split expects a trace-free (Weyl) tensor")
    S = hodge_star4()
    Pp = 0.5 * (np.eye(6) + S)
    Pm = 0.5 * (np.eye(6) - S)
    Wh = form2_operator(W, validate=False)
    return Pp @ Wh @ Pp, Pm @ Wh @ Pm


@lru_cache(maxsize=None)
def permutations_with_sign(n: int) -> tuple[np.ndarray, np.ndarray]:
    perms = np.array(list(permutations(range(n))), dtype=int)
    signs = np.array([_perm_sign(p) for p in perms], dtype=float)
    perms.setflags(write=False)
    signs.setflags(write=False)
    return perms, signs
