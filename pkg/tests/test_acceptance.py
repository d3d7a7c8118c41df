"""
Acceptance gate: eleven criteria at their stated tolerances.

Each test carries ``@pytest.mark.acceptance(number, title)``; the terminal
summary prints one ``ACCEPTANCE [PASS]/[FAIL]`` line per criterion.
"""

import json
import math
import subprocess
import sys
from fractions import Fraction

import numpy as np
import pytest

from einstab import gauss_bonnet as gb
from einstab import kahler, stability, tensor
from einstab.catalog import (make_cpn, make_custom, make_space_form, rescale, standard_complex_structure,
                             unit_volume)
from einstab.samples import random_curvature, random_kahler_einstein
from einstab.spectra import eigen_functions
from einstab.verdict import Verdict

acceptance = pytest.mark.acceptance


def rel(a, b):
    return abs(a - b) / max(abs(a), abs(b))


@acceptance(1, "Gauss-Bonnet golden values")
def test_gauss_bonnet_golden(models):
    four = {"S^4": 2, "CP^2": 3, "S^2 x S^2": 4}
    six = {"S^6": 2, "CP^3": 4, "S^3 x S^3": 0, "S^2 x S^4": 4}
    for name, chi in four.items():
        rep = gb.euler_dim4(models[name])
        assert abs(rep.chi_explicit - chi) <= 1e-7, name
        assert abs(rep.chi_einstein - chi) <= 1e-7, name
    for name, chi in six.items():
        rep = gb.euler_dim6(models[name])
        for route in ("chi_explicit", "chi_einstein", "chi_weyl"):
            assert abs(getattr(rep, route) - chi) <= 1e-7, (name, route)


@acceptance(2, "Pfaffian oracle equivalence")
def test_pfaffian_oracle():
    rng = np.random.default_rng(2)
    for _ in range(100):
        R4 = random_curvature(rng, 4)
        R6 = random_curvature(rng, 6)
        assert rel(gb.pfaffian_density(R4), gb.dim4_density(R4)) <= 1e-9
        assert rel(gb.pfaffian_density(R6), gb.dim6_density(R6)) <= 1e-9


def _trace_and_sign(T):
    ev = np.linalg.eigvalsh(tensor.sym2_operator(T, validate=False))
    indefinite = ev.max() > 0 > ev.min()
    return abs(ev.sum()), indefinite


@acceptance(3, "Trace-freeness and indefiniteness of Weyl and Bochner actions")
def test_trace_free_actions():
    rng = np.random.default_rng(3)
    for n in (4, 5, 6):
        for _ in range(100):
            W = tensor.weyl_part(random_curvature(rng, n))
            tr, indefinite = _trace_and_sign(W)
            assert tr <= 1e-10
            if np.linalg.norm(W) > 1e-6:
                assert indefinite
    for m in (2, 3):
        for _ in range(20):
            R, _ = random_kahler_einstein(rng, m)
            B = kahler.bochner_tensor(make_custom(R, 1.0, complex_structure=standard_complex_structure(m)))
            tr, indefinite = _trace_and_sign(B)
            assert tr <= 1e-10
            if np.linalg.norm(B) > 1e-6:
                assert indefinite


@acceptance(4, "Six-dimensional Euler criterion on the round sphere")
def test_six_dim_sphere(models):
    unit, _ = unit_volume(models["S^6"])
    rep = stability.evaluate_all(unit)
    c = next(c for c in rep.criteria if c.criterion_id == "thm_1_6")
    assert rep.overall == Verdict.STRICTLY_STABLE
    # closed-form chain: mu^3 at unit volume is 125 * vol(S^6) = (400/3) pi^3
    coefficient = Fraction(144, 25) - Fraction(12 * 7 ** 2 * 3 ** 2, 25 * 5 * 11 ** 2)
    expected = float(coefficient) * 400 / 3 * math.pi ** 3
    assert rel(float(coefficient), 5.410115702) <= 1e-9
    assert rel(c.measured, expected) <= 1e-9
    assert rel(c.threshold, 768 * math.pi ** 3) <= 1e-9
    assert c.margin > 0


@acceptance(5, "Exact threshold constants")
def test_exact_constants():
    coeff = stability.weyl_integral_coefficient(6)
    assert coeff == Fraction(21, 55)
    assert rel(float(coeff), 7 * 3 / (5 * 11)) <= 1e-15
    assert stability.weyl_isolation_coefficient(6) == Fraction(1, 5)
    n = 6
    assert kahler.kahler_sup_coefficient(n) == Fraction(n - 2, 2 * (n + 2)) == Fraction(1, 4)


@acceptance(6, "Verdict fixtures")
def test_verdict_fixtures(models):
    for n in (3, 4, 5, 6):
        rep = stability.evaluate_all(make_space_form(n, 1.0))
        assert rep.overall == Verdict.STRICTLY_STABLE
        by_id = {c.criterion_id: c for c in rep.criteria}
        assert by_id["koiso"].verdict_contribution == Verdict.STRICTLY_STABLE
        assert by_id["weyl_sup"].verdict_contribution == Verdict.STRICTLY_STABLE
    for n in (4, 5, 6):
        assert stability.evaluate_all(make_space_form(n, -1.0, volume=1.0)).overall == Verdict.STRICTLY_STABLE
    assert stability.evaluate_all(models["T^4"]).overall == Verdict.STABLE
    for name in ("S^2 x S^2", "S^3 x S^3"):
        M = models[name]
        rep = stability.evaluate_all(M)
        assert rep.overall == Verdict.UNSTABLE
        assert abs(rep.witness.quadratic_form_value + 2 * M.mu) <= 1e-10
    assert abs(stability.evaluate_all(models["S^2 x S^2"]).witness.quadratic_form_value + 2.0) <= 1e-10
    assert abs(stability.evaluate_all(models["S^3 x S^3"]).witness.quadratic_form_value + 4.0) <= 1e-10


@acceptance(7, "Cubic identity for parallel curvature")
def test_sakai_identity(models):
    for name in ("S^4", "S^6", "CP^2", "CP^3", "S^2 x S^2", "S^3 x S^3"):
        M = models[name]
        res = gb.sakai_identity_residual(M)
        c1, c2, _ = tensor.cubic_invariants(M.curvature)
        scale = max(abs(4 * c1), abs(2 * c2), abs(2 * M.mu * np.sum(M.curvature ** 2)))
        assert abs(res) <= 1e-9 * scale, name


@acceptance(8, "Self-dual Weyl equality on CP^2")
def test_cp2_self_dual(models):
    M = models["CP^2"]
    Wp, Wm = tensor.dual_split(tensor.weyl_part(M.curvature))
    integral = 4 * np.trace(Wp @ Wp) * M.volume
    assert rel(integral, 8 / 3 * M.mu ** 2 * M.volume) <= 1e-6
    assert rel(integral, 48 * math.pi ** 2) <= 1e-6
    assert np.max(np.abs(Wm)) <= 1e-10


@acceptance(9, "Kähler identity suite")
def test_kahler_suite():
    for m in (2, 3):
        M = make_cpn(m)
        res = kahler.decomposition_identity_check(M, trials=100, seed=9)
        assert max(res.values()) <= 1e-10
        # B = 0 on CP^m, so the curvature action alone shows the two factors
        n, mu = M.dim, M.mu
        A = tensor.sym2_operator(M.curvature)
        for basis, factor in ((kahler.hermitian_basis(M.complex_structure), 2),
                              (kahler.skew_hermitian_basis(M.complex_structure), -4)):
            ev = np.linalg.eigvalsh(basis.T @ A @ basis)
            assert np.max(np.abs(ev - factor * mu / (n + 2))) <= 1e-10
    rng = np.random.default_rng(9)
    for m in (2, 3):
        R, _ = random_kahler_einstein(rng, m)
        M = make_custom(R, 1.0, complex_structure=standard_complex_structure(m))
        assert max(kahler.decomposition_identity_check(M, trials=100, seed=10).values()) <= 1e-10
    for m in (1, 2, 3):
        assert np.max(np.abs(kahler.bochner_tensor(make_cpn(m)))) <= 1e-10
    for _ in range(5):
        R, _ = random_kahler_einstein(rng, 2)
        M = make_custom(R, 1.0, complex_structure=standard_complex_structure(2))
        B = kahler.bochner_tensor(M)
        _, Wm = tensor.dual_split(tensor.weyl_part(R))
        Wm4 = tensor.curvature_from_form2(Wm, 4)
        spec_b = np.linalg.eigvalsh(tensor.sym2_operator(B))
        spec_w = np.linalg.eigvalsh(tensor.sym2_operator(Wm4))
        assert np.max(np.abs(spec_b - spec_w)) <= 1e-9


@acceptance(10, "Scale invariance and covariance")
def test_scale_invariance(models):
    for name in ("S^4", "CP^2", "S^2 x S^2", "S^6", "CP^3", "S^3 x S^3", "S^2 x S^4"):
        M = models[name]
        base_sp = eigen_functions(M)
        base_gb = gb.gauss_bonnet(M)
        base = stability.evaluate_all(M)
        margins = {c.criterion_id: c for c in base.criteria}
        for c in (0.5, 2.0, 10.0):
            S = rescale(M, c)
            sp = eigen_functions(S)
            if base_sp.w_lq > 0:
                assert rel(sp.w_lq, base_sp.w_lq) <= 1e-9
            else:
                assert sp.w_lq <= 1e-12
            rep = gb.gauss_bonnet(S)
            for route in ("chi_pfaffian", "chi_explicit", "chi_einstein"):
                assert abs(getattr(rep, route) - getattr(base_gb, route)) <= 1e-9 * max(1.0, abs(getattr(base_gb, route)))
            scaled = stability.evaluate_all(S)
            assert scaled.overall == base.overall
            for crit in scaled.criteria:
                if crit.criterion_id in ("koiso", "weyl_sup"):
                    ref = margins[crit.criterion_id]
                    assert abs(crit.margin * c - ref.margin) <= 1e-9 * max(1.0, abs(ref.margin))
                    assert crit.verdict_contribution == ref.verdict_contribution


@acceptance(11, "CLI determinism and diagnostics")
def test_cli_determinism(tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text('{"type":"cpn","complex_dim":2}')
    cmd = [sys.executable, "-m", "einstab", "check", "--spec", str(spec), "--seed", "7"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first

    bad = subprocess.run([sys.executable, "-m", "einstab", "check"], capture_output=True,
                         input=b'{"type":"space_form","dim":4,"curvature":-1.0}')
    assert bad.returncode == 1
    diag = json.loads(bad.stderr.decode().strip())
    assert diag["path"] == "$.volume"
    nested = subprocess.run([sys.executable, "-m", "einstab", "gauss-bonnet"], capture_output=True,
                            input=b'{"type":"product","factors":[{"type":"cpn","complex_dim":1},{"type":"cpn"}]}')
    assert nested.returncode == 1
    assert json.loads(nested.stderr.decode())["path"] == "$.factors[1].complex_dim"
