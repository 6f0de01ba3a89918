import numpy as np
import pytest
from scipy.special import betaln

from discinterp import (
    CoeffSeries,
    Divergence,
    NotHilbert,
    SigmaSet,
    UnsupportedSpace,
    bergman_radial,
    blaschke_coeffs,
    dirichlet_kernel,
    eval_functional_norm,
    eval_series,
    gram_matrix,
    hardy,
    jet_values,
    kernel_diagonal,
    min_norm_trace,
    norm,
    power_inequality_check,
    seq_weighted,
    series_product,
)

from conftest import random_poly, random_sigma


class TestNorms:
    def test_dirichlet_h2(self):
        assert norm(hardy(2), dirichlet_kernel(4)) == pytest.approx(2.0, abs=1e-12)

    def test_zero_series_all_spaces(self):
        zero = CoeffSeries([0.0, 0.0])
        for space in (hardy(2), hardy(np.inf), seq_weighted(2, 1.5), bergman_radial(2, 0.5)):
            assert norm(space, zero) == 0.0

    def test_seq_alpha_one_is_hardy_two(self, rng):
        f = random_poly(rng, 17)
        assert norm(seq_weighted(2, 1.0), f) == pytest.approx(
            norm(hardy(2), f), abs=1e-12
        )

    def test_hardy4_frozen_value(self):
        # ||1+z||_4^4 = sum |coef((1+z)^2)|^2 = 1 + 4 + 1 = 6
        assert norm(hardy(4), CoeffSeries([1.0, 1.0])) == pytest.approx(
            6.0**0.25, rel=1e-12
        )

    def test_hardy_inf_is_max_modulus(self):
        # |1 + 0.5 z| peaks at z = 1
        assert norm(hardy(np.inf), CoeffSeries([1.0, 0.5])) == pytest.approx(1.5, rel=1e-10)

    def test_bergman_matches_coefficient_formula(self, rng):
        for beta in (-0.5, 0.0, 1.3):
            f = random_poly(rng, 11)
            ks = np.arange(len(f))
            oracle = np.sqrt(
                np.sum(np.abs(f.coeffs) ** 2 * np.pi * np.exp(betaln(ks + 1, beta + 1)))
            )
            assert norm(bergman_radial(2, beta), f) == pytest.approx(oracle, rel=1e-10)

    def test_bergman_p1_unit_disc_area(self):
        # integral of |1| over the disc is pi
        assert norm(bergman_radial(1, 0.0), CoeffSeries([1.0])) == pytest.approx(
            np.pi, rel=1e-10
        )

    def test_unsupported_bergman_sup(self):
        with pytest.raises(UnsupportedSpace):
            norm(bergman_radial(np.inf, 0.0), CoeffSeries([1.0]))


class TestEvalFunctional:
    def test_hardy2_origin(self):
        assert eval_functional_norm(hardy(2), 0.0) == 1.0

    def test_hardy2_frozen(self):
        assert eval_functional_norm(hardy(2), 0.8) == pytest.approx(5.0 / 3.0, rel=1e-12)

    def test_seq_dominates_hardy(self):
        for t in (0.0, 0.3, 0.9):
            for alpha in (1.0, 1.5, 2.0):
                assert (
                    eval_functional_norm(seq_weighted(2, alpha), t)
                    >= eval_functional_norm(hardy(2), t) - 1e-12
                )

    def test_divergence_at_boundary(self):
        with pytest.raises(Divergence):
            eval_functional_norm(hardy(2), 1.0)

    def test_pointwise_bound_and_sharpness(self, rng):
        spaces = [hardy(1), hardy(2), hardy(4), seq_weighted(2, 1.5), bergman_radial(2, 0.0)]
        ts = np.linspace(0.0, 0.95, 12)
        for space in spaces:
            for _ in range(6):
                f = random_poly(rng, 10)
                nf = norm(space, f)
                for t in ts:
                    bound = eval_functional_norm(space, t) * nf
                    assert abs(eval_series(f, t)) <= bound * (1 + 1e-6) + 1e-12

    def test_sharpness_for_kernel_series(self):
        for space in (hardy(2), seq_weighted(2, 1.5)):
            t = 0.7
            ks = np.arange(400)
            kap = kernel_diagonal(space, ks)
            f = CoeffSeries(kap * t**ks)
            lhs = abs(eval_series(f, t))
            rhs = eval_functional_norm(space, t) * norm(space, f)
            assert lhs == pytest.approx(rhs, rel=1e-8)


class TestGram:
    def test_single_origin(self):
        G = gram_matrix(hardy(2), SigmaSet((0.0,)))
        assert np.allclose(G, [[1.0]])

    def test_two_points_frozen(self):
        G = gram_matrix(hardy(2), SigmaSet((0.0, 0.5)))
        assert np.allclose(G, [[1.0, 1.0], [1.0, 4.0 / 3.0]], atol=1e-12)

    def test_double_origin_identity(self):
        G = gram_matrix(hardy(2), SigmaSet((0.0, 0.0)))
        assert np.allclose(G, np.eye(2), atol=1e-12)

    def test_distinct_matches_szego_kernel(self, rng):
        sigma = random_sigma(rng, n_max=5, r_max=0.8, distinct=True)
        G = gram_matrix(hardy(2), sigma)
        pts = np.array(sigma.points)
        expect = 1.0 / (1.0 - np.outer(pts, pts.conj()))
        assert np.max(np.abs(G - expect)) < 1e-10

    def test_positive_definite_random(self, rng):
        for _ in range(10):
            sigma = random_sigma(rng, n_max=8, r_max=0.9)
            G = gram_matrix(hardy(2), sigma)
            assert np.linalg.eigvalsh(G)[0] > 0

    def test_not_hilbert(self):
        with pytest.raises(NotHilbert):
            gram_matrix(hardy(4), SigmaSet((0.0,)))

    def test_near_collision_warns(self):
        from discinterp import IllConditionedWarning

        with pytest.warns(IllConditionedWarning):
            gram_matrix(hardy(2), SigmaSet((0.5, 0.5 + 1e-9)))


class TestMinNorm:
    def test_constant_at_origin(self):
        res = min_norm_trace(hardy(2), SigmaSet((0.0,)), [1.0])
        assert res.norm == pytest.approx(1.0)
        assert np.allclose(res.interpolant.coeffs, [1.0])

    def test_zero_trace(self, rng):
        sigma = random_sigma(rng, n_max=4, r_max=0.7)
        res = min_norm_trace(hardy(2), sigma, np.zeros(sigma.n))
        assert res.norm == 0.0

    def test_frozen_kernel_value(self):
        res = min_norm_trace(hardy(2), SigmaSet((0.8,)), [1.0])
        assert res.norm == pytest.approx(0.6, abs=1e-12)
        assert eval_series(res.interpolant, 0.8) == pytest.approx(1.0, abs=1e-10)

    def test_jet_reproduction(self, rng):
        for space in (hardy(2), seq_weighted(2, 1.5), bergman_radial(2, 0.0)):
            sigma = SigmaSet((0.4, 0.4, -0.3 + 0.2j))
            a = rng.standard_normal(3) + 1j * rng.standard_normal(3)
            res = min_norm_trace(space, sigma, a)
            jets = jet_values(res.interpolant, sigma)
            assert np.max(np.abs(jets - a)) <= 1e-8 * max(1.0, np.max(np.abs(a)))

    def test_optimality_against_vanishing_perturbations(self, rng):
        sigma = random_sigma(rng, n_max=4, r_max=0.7)
        a = rng.standard_normal(sigma.n) + 1j * rng.standard_normal(sigma.n)
        res = min_norm_trace(hardy(2), sigma, a)
        B = blaschke_coeffs(sigma.points, 600)
        for _ in range(5):
            h = series_product(B, random_poly(rng, 6, scale=0.3))
            pad = max(len(res.interpolant), len(h))
            combined = CoeffSeries(res.interpolant.padded(pad) + h.padded(pad))
            assert norm(hardy(2), combined) >= res.norm - 1e-9


class TestPowerInequality:
    def test_alpha_one_exact_equality(self, rng):
        f = random_poly(rng, 8)
        lhs, rhs = power_inequality_check(1.0, f)
        assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_frozen_value(self):
        lhs, rhs = power_inequality_check(1.5, CoeffSeries([1.0, 1.0]))
        assert rhs == pytest.approx(4.0)
        assert lhs == pytest.approx(10.0 / 3.0, rel=1e-12)
        assert lhs <= rhs + 1e-9

    def test_zero_series(self):
        lhs, rhs = power_inequality_check(2.0, CoeffSeries([0.0]))
        assert lhs == 0.0 and rhs == 0.0

    def test_random_sweep(self, rng):
        for alpha in (1.0, 1.5, 2.0):
            for _ in range(25):
                f = random_poly(rng, int(rng.integers(0, 17)))
                lhs, rhs = power_inequality_check(alpha, f)
                assert lhs <= rhs + 1e-9

    def test_rejects_non_integer_power(self):
        with pytest.raises(ValueError):
            power_inequality_check(1.25, CoeffSeries([1.0]))
