"""Seeded property suite exercised by ``einstab selftest``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gauss_bonnet as gb
from . import kahler, samples, tensor
from .catalog import catalog, make_cpn, make_custom, standard_complex_structure
from .linalg import symmetric_eigen


@dataclass
class SelftestCheck:
    name: str
    value: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.value <= self.tolerance)


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


def run(seed: int = 0, count: int = 20) -> list[SelftestCheck]:
    rng = np.random.default_rng(seed)
    checks: list[SelftestCheck] = []

    worst = 0.0
    for _ in range(count):
        R = samples.random_curvature(rng, 4)
        worst = max(worst, _rel(gb.pfaffian_density(R, False), gb.dim4_density(R, False)))
    checks.append(SelftestCheck("pfaffian_vs_dim4", worst, 1e-9))

    worst = 0.0
    for _ in range(count):
        R = samples.random_curvature(rng, 6)
        worst = max(worst, _rel(gb.pfaffian_density(R, False), gb.dim6_density(R, False)))
    checks.append(SelftestCheck("pfaffian_vs_dim6", worst, 1e-9))

    worst_tr = worst_ident = 0.0
    for n in (4, 5, 6):
        for _ in range(count):
            R = samples.random_curvature(rng, n)
            W = tensor.weyl_part(R, validate=False)
            worst_tr = max(worst_tr, abs(np.sum(symmetric_eigen(tensor.sym2_operator(W, False)))))
            c1, c2, tr3 = tensor.cubic_invariants(R, validate=False)
            worst_ident = max(worst_ident, _rel(-6 * c2, 48 * tr3))
    checks.append(SelftestCheck("weyl_action_trace", worst_tr, 1e-10))
    checks.append(SelftestCheck("cubic_operator_identity", worst_ident, 1e-9))

    worst = 0.0
    for name, model in catalog().items():
        if model.mu > 0 and model.dim >= 3:
            R = model.curvature
            res = gb.sakai_identity_residual(model)
            worst = max(worst, abs(res) / (abs(model.mu) * float(np.sum(R * R))))
    checks.append(SelftestCheck("sakai_residual_symmetric_models", worst, 1e-9))

    worst_id = worst_tr = 0.0
    for m in (2, 3):
        for _ in range(max(1, count // 4)):
            R, _ = samples.random_kahler_einstein(rng, m)
            model = make_custom(R, 1.0, complex_structure=standard_complex_structure(m))
            B = kahler.bochner_tensor(model)
            worst_tr = max(worst_tr, abs(np.trace(tensor.sym2_operator(B, False))))
            res = kahler.decomposition_identity_check(model, trials=20, seed=int(rng.integers(1 << 31)))
            worst_id = max(worst_id, *res.values())
        res = kahler.decomposition_identity_check(make_cpn(m), trials=20, seed=seed)
        worst_id = max(worst_id, *res.values())
    checks.append(SelftestCheck("bochner_action_trace", worst_tr, 1e-10))
    checks.append(SelftestCheck("kahler_decomposition_identity", worst_id, 1e-10))

    worst = 0.0
    for name, model in catalog().items():
        if model.dim in (4, 6):
            rep = gb.gauss_bonnet(model)
            if rep.chi_expected is not None:
                worst = max(worst, abs(rep.chi_explicit - rep.chi_expected),
                            abs(rep.chi_pfaffian - rep.chi_expected))
    checks.append(SelftestCheck("catalog_euler_characteristics", worst, 1e-7))
    return checks
