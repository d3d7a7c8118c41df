"""Cyclic Jacobi eigensolver for small dense symmetric matrices."""

from __future__ import annotations

import numpy as np

from .errors import ConvergenceError, InputError

OFF_TOL = 1e-14
MAX_SWEEPS = 100


def symmetric_eigen(A, vectors: bool = False, tol: float = OFF_TOL, max_sweeps: int = MAX_SWEEPS):
    """
    Eigen-decomposition of a real symmetric matrix by cyclic Jacobi rotations.

    Sweeps visit the pairs ``(p, q)``, ``p < q``, in row-major order, so the
    result is bit-for-bit deterministic for a given input.

    Parameters
    ----------
    A : array_like of shape (N, N)
        Symmetric matrix (asymmetry above ``1e-10 * max(1, max|A|)`` is rejected).
    vectors : bool
        Also return the orthonormal eigenvectors as columns.
    tol : float
        Stop once the off-diagonal Frobenius norm drops below
        ``tol * max(1, ||A||_F)``.

    Returns
    -------
    w : ndarray
        Eigenvalues in ascending order.
    V : ndarray, optional
        Matching eigenvectors, ``A = V diag(w) V^T``.
    """
    A = np.array(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise InputError(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise InputError("matrix has non-finite entries")
    N = A.shape[0]
    scale = max(1.0, float(np.max(np.abs(A)))) if N else 1.0
    if N and np.max(np.abs(A - A.T)) > 1e-10 * scale:
        raise InputError("matrix is not symmetric")
    A = 0.5 * (A + A.T)
    V = np.eye(N)

    target = tol * max(1.0, float(np.linalg.norm(A)))
    for _ in range(max_sweeps):
        off = float(np.linalg.norm(A[~np.eye(N, dtype=bool)]))
        if off <= target:
            break
        for p in range(N - 1):
            for q in range(p + 1, N):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                diff = A[q, q] - A[p, p]
                if abs(apq) < 1e-150 * abs(diff):
                    # small-angle limit; avoids overflow in theta
                    t = apq / diff
                else:
                    theta = diff / (2.0 * apq)
                    t = np.copysign(1.0, theta) / (abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.hypot(t, 1.0)
                s = t * c
                cp, cq = A[:, p].copy(), A[:, q].copy()
                A[:, p] = c * cp - s * cq
                A[:, q] = s * cp + c * cq
                rp, rq = A[p, :].copy(), A[q, :].copy()
                A[p, :] = c * rp - s * rq
                A[q, :] = s * rp + c * rq
                A[p, q] = A[q, p] = 0.0
                vp, vq = V[:, p].copy(), V[:, q].copy()
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq
    else:
        raise ConvergenceError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")

    w = np.diag(A).copy()
    order = np.argsort(w, kind="stable")
    w = w[order]
    if vectors:
        return w, V[:, order]
    return w


def top_eigenvalue(A) -> float:
    w = symmetric_eigen(A)
    return float(w[-1]) if w.size else 0.0


def compress(A, Q) -> np.ndarray:
    """Restriction ``Q^T A Q`` of a symmetric operator to the span of orthonormal columns Q."""
    M = Q.T @ A @ Q
    return 0.5 * (M + M.T)


def gram_schmidt(vectors, drop_tol: float = 1e-10) -> np.ndarray:
    """Modified Gram-Schmidt on the rows of ``vectors``; near-dependent rows are dropped."""
    basis: list[np.ndarray] = []
    for v in np.asarray(vectors, dtype=float):
        w = v.copy()
        for b in basis:
            w -= (b @ w) * b
        nrm = np.linalg.norm(w)
        if nrm > drop_tol:
            basis.append(w / nrm)
    if not basis:
        return np.zeros((np.asarray(vectors).shape[-1], 0))
    return np.array(basis).T
