"""Homogeneous model Einstein manifolds: space forms, CP^m and Einstein products."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import tensor
from .errors import InputError

EINSTEIN_TOL = 1e-10
KAHLER_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class ManifoldModel:
    """
    A homogeneous Einstein manifold described by its curvature at one point.

    ``split`` records the factor dimensions when the model is a Riemannian
    product built by :func:`make_product`.
    """

    name: str
    dim: int
    mu: float
    curvature: np.ndarray
    volume: float
    euler_char: int | None = None
    complex_structure: np.ndarray | None = None
    is_symmetric: bool = True
    split: tuple[int, int] | None = None
    grad_W_sq: float | None = None

    @property
    def kahler_form(self) -> np.ndarray | None:
        """``omega(X, Y) = g(JX, Y)``, i.e. ``omega_ij = J_ji``."""
        if self.complex_structure is None:
            return None
        return self.complex_structure.T.copy()


@dataclass
class Check:
    name: str
    passed: bool
    residual: float
    tolerance: float
    detail: str = ""


@dataclass
class ValidationReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]


def sphere_volume(n: int, K: float = 1.0) -> float:
    """Volume of the round n-sphere of sectional curvature K > 0."""
    return 2 * math.pi ** ((n + 1) / 2) / math.gamma((n + 1) / 2) * K ** (-n / 2)


def standard_complex_structure(m: int) -> np.ndarray:
    """Block-diagonal J with ``J e_{2k} = e_{2k+1}`` (0-based), columns are images."""
    J = np.zeros((2 * m, 2 * m))
    for k in range(m):
        J[2 * k + 1, 2 * k] = 1.0
        J[2 * k, 2 * k + 1] = -1.0
    return J


def fubini_study_curvature(m: int) -> np.ndarray:
    """Curvature of CP^m with holomorphic sectional curvature 4."""
    n = 2 * m
    g = np.eye(n)
    w = standard_complex_structure(m).T
    ww = np.einsum("ij,kl->ijkl", w, w)
    return 0.5 * (tensor.kulkarni_nomizu(g, g) + tensor.kulkarni_nomizu(w, w)) - 2.0 * ww


def make_space_form(n: int, K: float, volume: float | None = None,
                    euler_char: int | None = None, name: str | None = None) -> ManifoldModel:
    if n < 2:
        raise InputError(f"dimension must be >= 2, got {n}")
    default_sphere = False
    if volume is None:
        if K <= 0:
            raise InputError("volume is required for flat and hyperbolic space forms")
        volume = sphere_volume(n, K)
        default_sphere = True
    if volume <= 0:
        raise InputError(f"volume must be positive, got {volume}")
    if euler_char is None:
        if n % 2 == 1 or K == 0:
            euler_char = 0
        elif default_sphere:
            euler_char = 2
    g = np.eye(n)
    R = 0.5 * K * tensor.kulkarni_nomizu(g, g)
    if name is None:
        name = f"S^{n}" if K > 0 else (f"T^{n}" if K == 0 else f"H^{n}")
        if K > 0 and K != 1:
            name += f"(K={K:g})"
    return ManifoldModel(name=name, dim=n, mu=(n - 1) * K, curvature=R, volume=float(volume),
                         euler_char=euler_char, is_symmetric=True)


def make_cpn(m: int) -> ManifoldModel:
    if m < 1:
        raise InputError(f"complex dimension must be >= 1, got {m}")
    if m > 4:
        raise InputError(f"complex dimension {m} exceeds the supported range (m <= 4)")
    return ManifoldModel(
        name=f"CP^{m}", dim=2 * m, mu=2.0 * m + 2.0, curvature=fubini_study_curvature(m),
        volume=math.pi ** m / math.factorial(m), euler_char=m + 1,
        complex_structure=standard_complex_structure(m), is_symmetric=True,
    )


def rescale(model: ManifoldModel, c: float) -> ManifoldModel:
    """
    Replace the metric g by c*g.

    Orthonormal-frame components of the (0,4) curvature scale by 1/c (the
    tensor itself scales by c, the frame vectors by c^{-1/2}).
    """
    if not c > 0:
        raise InputError(f"rescale factor must be positive, got {c}")
    if c == 1:
        return model
    return replace(
        model,
        curvature=model.curvature / c,
        mu=model.mu / c,
        volume=model.volume * c ** (model.dim / 2),
        grad_W_sq=None if model.grad_W_sq is None else model.grad_W_sq * c ** (model.dim / 2 - 3),
    )


def unit_volume(model: ManifoldModel) -> tuple[ManifoldModel, float]:
    """Rescale to volume one; returns the model and the factor used."""
    c = model.volume ** (-2.0 / model.dim)
    return rescale(model, c), c


def make_product(a: ManifoldModel, b: ManifoldModel, auto_rescale: bool = False) -> ManifoldModel:
    if auto_rescale:
        if a.mu == 0 and b.mu == 0:
            pass
        elif a.mu * b.mu > 0:
            b = rescale(b, b.mu / a.mu)
        else:
            raise InputError(
                f"cannot rescale Einstein constants {a.mu:g} and {b.mu:g} to agree"
            )
    elif abs(a.mu - b.mu) > 1e-10 * max(abs(a.mu), 1.0):
        raise InputError(
            f"Einstein constants differ ({a.mu:g} vs {b.mu:g}); pass auto_rescale to match them"
        )
    na, nb = a.dim, b.dim
    n = na + nb
    R = np.zeros((n, n, n, n))
    R[:na, :na, :na, :na] = a.curvature
    R[na:, na:, na:, na:] = b.curvature
    J = None
    if a.complex_structure is not None and b.complex_structure is not None:
        J = np.zeros((n, n))
        J[:na, :na] = a.complex_structure
        J[na:, na:] = b.complex_structure
    chi = a.euler_char * b.euler_char if a.euler_char is not None and b.euler_char is not None else None
    return ManifoldModel(
        name=f"{a.name} x {b.name}", dim=n, mu=a.mu, curvature=R, volume=a.volume * b.volume,
        euler_char=chi, complex_structure=J, is_symmetric=a.is_symmetric and b.is_symmetric,
        split=(na, nb),
    )


def make_custom(curvature, volume: float, euler_char: int | None = None,
                complex_structure=None, name: str = "custom", is_symmetric: bool = False,
                grad_W_sq: float | None = None) -> ManifoldModel:
    """Wrap user-supplied curvature data; ``mu`` is read off as ``scal / n``."""
    R = tensor.check_curvature(curvature)
    n = R.shape[0]
    if n < 2:
        raise InputError("dimension must be >= 2")
    if not volume > 0:
        raise InputError(f"volume must be positive, got {volume}")
    J = None
    if complex_structure is not None:
        J = np.asarray(complex_structure, dtype=float)
        if J.shape != (n, n):
            raise InputError(f"complex structure must be {n}x{n}, got {J.shape}")
    _, scal, _ = tensor.contract(R, validate=False)
    return ManifoldModel(name=name, dim=n, mu=scal / n, curvature=R, volume=float(volume),
                         euler_char=euler_char, complex_structure=J, is_symmetric=is_symmetric,
                         grad_W_sq=grad_W_sq)


def kahler_residual(R: np.ndarray, J: np.ndarray) -> float:
    """max |R(JX, JY, Z, V) - R(X, Y, Z, V)| over frame vectors."""
    RJ = np.einsum("ai,bj,abkl->ijkl", J, J, R)
    return float(np.max(np.abs(RJ - R)))


def validate(model: ManifoldModel) -> ValidationReport:
    report = ValidationReport()
    R = np.asarray(model.curvature, dtype=float)
    n = model.dim
    if R.shape != (n, n, n, n):
        report.checks.append(Check("shape", False, float("inf"), 0.0, f"got {R.shape}"))
        return report
    scale = max(1.0, float(np.max(np.abs(R))))
    for name, (res, idx) in tensor.symmetry_residuals(R).items():
        tol = (tensor.BIANCHI_TOL if name == "bianchi" else tensor.SYMMETRY_TOL) * scale
        report.checks.append(Check(name, res <= tol, res, tol, f"worst component {idx}"))
    ric = np.einsum("ijki->jk", R)
    res = float(np.max(np.abs(ric - model.mu * np.eye(n))))
    tol = EINSTEIN_TOL * max(1.0, abs(model.mu), scale)
    report.checks.append(Check("einstein", res <= tol, res, tol, "max |Ric - mu g|"))
    report.checks.append(Check("volume", model.volume > 0, 0.0, 0.0, f"volume = {model.volume!r}"))
    J = model.complex_structure
    if J is not None:
        if n % 2:
            report.checks.append(Check("complex_dimension", False, float(n), 0.0, "odd dimension"))
        else:
            res = float(np.max(np.abs(J @ J + np.eye(n))))
            report.checks.append(Check("J_squared", res <= KAHLER_TOL, res, KAHLER_TOL, "max |J^2 + id|"))
            res = float(np.max(np.abs(J.T @ J - np.eye(n))))
            report.checks.append(Check("J_orthogonal", res <= KAHLER_TOL, res, KAHLER_TOL, "max |J^T J - id|"))
            res = kahler_residual(R, J)
            tol = KAHLER_TOL * scale
            report.checks.append(Check("kahler_identity", res <= tol, res, tol, "max |R(J.,J.,.,.) - R|"))
    return report


def require_valid(model: ManifoldModel) -> ManifoldModel:
    report = validate(model)
    if not report.ok:
        bad = report.failures()[0]
        raise InputError(
            f"model {model.name!r} fails {bad.name}: residual {bad.residual:.3e} > {bad.tolerance:.1e}"
            + (f" ({bad.detail})" if bad.detail else "")
        )
    return model


def catalog() -> dict[str, ManifoldModel]:
    """Named built-in models used by the CLI and the acceptance tests."""
    s2 = make_space_form(2, 1.0)
    s3 = make_space_form(3, 1.0)
    return {
        "S^4": make_space_form(4, 1.0),
        "S^6": make_space_form(6, 1.0),
        "CP^2": make_cpn(2),
        "CP^3": make_cpn(3),
        "S^2 x S^2": make_product(s2, s2),
        "S^3 x S^3": make_product(s3, s3),
        "S^2 x S^4": make_product(s2, make_space_form(4, 1.0), auto_rescale=True),
        "T^4": make_space_form(4, 0.0, volume=1.0),
        "H^4": make_space_form(4, -1.0, volume=1.0),
    }
