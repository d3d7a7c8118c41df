"""Curvature tensor algebra: symmetries, contractions, decompositions, operators."""

import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from einstab import tensor
from einstab.errors import CurvatureError, InputError
from einstab.samples import project_curvature, random_curvature, random_einstein

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def sphere(n, K=1.0):
    g = np.eye(n)
    return K / 2 * tensor.kulkarni_nomizu(g, g)


def loop_ric(R):
    """Ricci contraction written as explicit loops."""
    n = R.shape[0]
    ric = np.zeros((n, n))
    for j, k, i in itertools.product(range(n), repeat=3):
        ric[j, k] += R[i, j, k, i]
    return ric


class TestKulkarniNomizu:
    def test_gg_components(self):
        R = sphere(3)
        # R(e0, e1, e1, e0) is the sectional curvature
        assert R[0, 1, 1, 0] == pytest.approx(1.0)
        assert R[0, 1, 0, 1] == pytest.approx(-1.0)
        assert R[0, 0, 1, 1] == 0.0

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_gg_norm(self, n):
        # counting ordered index quadruples: |g∧g|^2 = 16 * n(n-1)/2
        g = np.eye(n)
        gg = tensor.kulkarni_nomizu(g, g)
        assert np.sum(gg * gg) == pytest.approx(16 * n * (n - 1) / 2)

    @given(seeds)
    @settings(max_examples=25, deadline=None)
    def test_product_of_symmetric_is_curvature(self, seed):
        rng = np.random.default_rng(seed)
        h = rng.standard_normal((4, 4))
        k = rng.standard_normal((4, 4))
        T = tensor.kulkarni_nomizu(h + h.T, k + k.T)
        res = tensor.symmetry_residuals(T)
        assert all(r < 1e-12 for r, _ in res.values())

    def test_symmetric_in_arguments(self, rng):
        h = rng.standard_normal((5, 5)); h += h.T
        k = rng.standard_normal((5, 5)); k += k.T
        np.testing.assert_allclose(tensor.kulkarni_nomizu(h, k), tensor.kulkarni_nomizu(k, h), atol=1e-14)


class TestValidation:
    def test_accepts_projection(self, rng):
        tensor.check_curvature(random_curvature(rng, 5))

    @pytest.mark.parametrize("name,perturb", [
        ("antisymmetry_12", lambda T: T.__setitem__((0, 1, 2, 3), T[0, 1, 2, 3] + 1e-3)),
        ("bianchi", None),
    ])
    def test_rejects_and_names_component(self, rng, name, perturb):
        T = random_curvature(rng, 4)
        if perturb is None:
            # a tensor with every pair symmetry but a non-zero Bianchi sum
            e = np.zeros((4, 4, 4, 4))
            e[0, 1, 2, 3] = e[1, 0, 3, 2] = e[2, 3, 0, 1] = e[3, 2, 1, 0] = 1
            e[1, 0, 2, 3] = e[0, 1, 3, 2] = e[3, 2, 0, 1] = e[2, 3, 1, 0] = -1
            T = T + e
        else:
            perturb(T)
        with pytest.raises(CurvatureError, match=name):
            tensor.check_curvature(T)

    def test_bianchi_can_be_skipped(self, rng):
        e = np.zeros((4, 4, 4, 4))
        e[0, 1, 2, 3] = e[1, 0, 3, 2] = e[2, 3, 0, 1] = e[3, 2, 1, 0] = 1
        e[1, 0, 2, 3] = e[0, 1, 3, 2] = e[3, 2, 0, 1] = e[2, 3, 1, 0] = -1
        tensor.check_curvature(e, bianchi=False)

    def test_bad_shape(self):
        with pytest.raises(InputError):
            tensor.as_curv4(np.zeros((3, 3, 3)))

    def test_non_finite(self):
        T = np.zeros((3, 3, 3, 3))
        T[0, 0, 0, 0] = np.nan
        with pytest.raises(InputError):
            tensor.check_curvature(T)

    def test_projection_is_idempotent(self, rng):
        T = random_curvature(rng, 4)
        np.testing.assert_allclose(project_curvature(T), T, atol=1e-14)


class TestContract:
    @pytest.mark.parametrize("n", [2, 3, 4, 6])
    def test_sphere(self, n):
        ric, scal, norm_sq = tensor.contract(sphere(n))
        np.testing.assert_allclose(ric, (n - 1) * np.eye(n), atol=1e-14)
        assert scal == pytest.approx(n * (n - 1))
        assert norm_sq == pytest.approx(4 * n * (n - 1) / 2)

    def test_matches_loops(self, rng):
        R = random_curvature(rng, 4)
        ric, scal, _ = tensor.contract(R)
        np.testing.assert_allclose(ric, loop_ric(R), atol=1e-13)
        assert scal == pytest.approx(np.trace(loop_ric(R)))

    def test_sign_convention_hyperbolic(self):
        ric, scal, _ = tensor.contract(sphere(4, -1.0))
        assert scal == pytest.approx(-12.0)


class TestDecomposition:
    @given(seeds, st.sampled_from([3, 4, 5, 6]))
    @settings(max_examples=20, deadline=None)
    def test_orthogonal_and_complete(self, seed, n):
        R = random_curvature(np.random.default_rng(seed), n)
        W, Sc, U = tensor.curvature_decompose(R)
        np.testing.assert_allclose(W + Sc + U, R, atol=1e-12)
        for A, B in [(W, Sc), (W, U), (Sc, U)]:
            assert abs(np.sum(A * B)) < 1e-10 * max(1.0, np.sum(R * R))
        ric_W, _, _ = tensor.contract(W, validate=False)
        assert np.max(np.abs(ric_W)) < 1e-12

    def test_weyl_vanishes_in_dim3(self, rng):
        W = tensor.weyl_part(random_curvature(rng, 3))
        assert np.max(np.abs(W)) < 1e-12

    def test_weyl_zero_for_n2(self, rng):
        assert not np.any(tensor.weyl_part(random_curvature(rng, 2)))

    def test_decompose_rejects_n2(self, rng):
        with pytest.raises(InputError):
            tensor.curvature_decompose(random_curvature(rng, 2))

    def test_einstein_has_no_U(self, rng):
        _, _, U = tensor.curvature_decompose(random_einstein(rng, 5))
        assert np.max(np.abs(U)) < 1e-12


class TestOperators:
    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_sym2_basis_orthonormal(self, n):
        E = tensor.sym2_basis(n)
        G = np.einsum("aij,bij->ab", E, E)
        np.testing.assert_allclose(G, np.eye(n * (n + 1) // 2), atol=1e-15)
        assert not E.flags.writeable

    def test_coords_roundtrip(self, rng):
        h = rng.standard_normal((4, 4)); h += h.T
        np.testing.assert_allclose(tensor.sym2_from_coords(tensor.sym2_coords(h), 4), h, atol=1e-14)

    def test_sphere_ring_action(self):
        # on a unit sphere R°h = tr(h) g - h
        h = np.diag([1.0, 2.0, -3.0, 0.5])
        np.testing.assert_allclose(tensor.ring_action(sphere(4), h), np.trace(h) * np.eye(4) - h, atol=1e-14)
        ev = np.linalg.eigvalsh(tensor.sym2_operator(sphere(4)))
        assert ev.min() == pytest.approx(-1.0) and ev.max() == pytest.approx(3.0)

    @given(seeds)
    @settings(max_examples=20, deadline=None)
    def test_sym2_operator_symmetric(self, seed):
        A = tensor.sym2_operator(random_curvature(np.random.default_rng(seed), 4))
        np.testing.assert_allclose(A, A.T, atol=1e-13)

    def test_ring_action_maps_ric(self, rng):
        # R°g = Ric
        R = random_curvature(rng, 5)
        ric, _, _ = tensor.contract(R)
        np.testing.assert_allclose(tensor.ring_action(R, np.eye(5)), ric, atol=1e-13)

    def test_form2_roundtrip(self, rng):
        R = random_curvature(rng, 5)
        M = tensor.form2_operator(R)
        np.testing.assert_allclose(tensor.curvature_from_form2(M, 5), R, atol=1e-14)

    def test_form2_sphere_is_identity(self):
        np.testing.assert_allclose(tensor.form2_operator(sphere(4, 2.0)), 2.0 * np.eye(6), atol=1e-14)

    @given(seeds, st.sampled_from([4, 5, 6]))
    @settings(max_examples=20, deadline=None)
    def test_cubic_identity(self, seed, n):
        c1, c2, tr3 = tensor.cubic_invariants(random_curvature(np.random.default_rng(seed), n))
        assert -6 * c2 == pytest.approx(48 * tr3, rel=1e-10, abs=1e-10)

    def test_cubic_sphere(self):
        # unit sphere S^n: R^ = identity on 2-forms
        n = 6
        _, _, tr3 = tensor.cubic_invariants(sphere(n))
        assert tr3 == pytest.approx(n * (n - 1) / 2)


class TestDualSplit:
    def test_star_squares_to_identity(self):
        S = tensor.hodge_star4()
        np.testing.assert_allclose(S @ S, np.eye(6), atol=1e-15)
        np.testing.assert_allclose(S, S.T)

    def test_norm_split(self, rng):
        W = tensor.weyl_part(random_curvature(rng, 4))
        Wp, Wm = tensor.dual_split(W)
        assert np.sum(W * W) == pytest.approx(4 * (np.trace(Wp @ Wp) + np.trace(Wm @ Wm)))
        assert abs(np.trace(Wp)) < 1e-12 and abs(np.trace(Wm)) < 1e-12

    def test_rejects_non_weyl(self):
        with pytest.raises(InputError):
            tensor.dual_split(sphere(4))

    def test_rejects_other_dims(self, rng):
        with pytest.raises(InputError):
            tensor.dual_split(tensor.weyl_part(random_curvature(rng, 5)))


def test_permutation_signs():
    perms, signs = tensor.permutations_with_sign(4)
    assert len(perms) == math.factorial(4)
    assert signs.sum() == 0
    for p, s in zip(perms, signs):
        assert s == round(np.linalg.det(np.eye(4)[list(p)]))
