import numpy as np
import pytest

from discinterp import (
    SigmaSet,
    UnsupportedSpace,
    bergman_radial,
    bound_sweep,
    carleson_constant,
    eval_functional_norm,
    hardy,
    interp_constant,
    min_norm_trace,
    norm,
    projection_operator_norm,
    quotient_norm,
    seq_weighted,
    theorem_bounds,
    witness_lower_bound,
)

from conftest import random_sigma


class TestTheoremBounds:
    def test_hardy2_frozen_row(self):
        rep = theorem_bounds(hardy(2), 8, 0.5)
        assert rep.lower == pytest.approx(np.sqrt(16.0) / np.sqrt(32.0), abs=1e-12)
        assert rep.upper == pytest.approx(np.sqrt(2.0 * 16.0), abs=1e-12)
        assert rep.lower_known and rep.upper_known

    def test_single_origin_phi_scale(self):
        rep = theorem_bounds(hardy(2), 1, 0.0)
        assert rep.phi_scale == pytest.approx(1.0)

    def test_seq_exponent(self):
        # alpha = 1.5 gives exponent (2 alpha - 1)/2 = 1 on n/(1-r)
        r1 = theorem_bounds(seq_weighted(2, 1.5), 4, 0.5)
        r2 = theorem_bounds(seq_weighted(2, 1.5), 8, 0.5)
        assert r2.lower / r1.lower == pytest.approx(2.0, rel=1e-12)
        assert not r1.lower_known

    def test_seq_general_p_orders(self):
        rep = theorem_bounds(seq_weighted(4, 1.5), 5, 0.5)
        assert rep.lower == pytest.approx((1 / 0.5) ** (1.5 - 0.25), rel=1e-12)
        assert rep.upper == pytest.approx(10.0 ** (1.5 + 0.5 - 0.5), rel=1e-12)

    def test_bergman_jet_upper(self):
        rep = theorem_bounds(bergman_radial(1, 0.0), 5, 0.5)
        assert rep.upper == pytest.approx(10.0**2, rel=1e-12)
        assert rep.lower == 0.0
        assert rep.phi_scale is None  # no evaluation-norm formula at p = 1

    def test_consistency_with_eval_functional(self):
        rep = theorem_bounds(seq_weighted(2, 1.5), 4, 0.6)
        t = 1.0 - (1.0 - 0.6) / 4
        assert rep.phi_scale == pytest.approx(
            eval_functional_norm(seq_weighted(2, 1.5), t)
        )

    def test_lower_never_exceeds_upper(self):
        specs = [hardy(2), hardy(4), seq_weighted(2, 1.5), seq_weighted(1.5, 2.0),
                 seq_weighted(4, 1.5), bergman_radial(2, 0.5), bergman_radial(1, 0.0)]
        for space in specs:
            for n in (1, 4, 16):
                for r in (0.0, 0.5, 0.9):
                    rep = theorem_bounds(space, n, r)
                    assert rep.lower <= rep.upper + 1e-12


class TestWitness:
    def test_trivial_single_point(self):
        assert witness_lower_bound(hardy(2), 0.0, 1) == pytest.approx(1.0, abs=1e-10)

    def test_origin_ratio_beats_half_sqrt_n(self):
        for n in (4, 9, 16):
            w = witness_lower_bound(hardy(2), 0.0, n)
            assert w >= 0.5 * np.sqrt(n)

    def test_certifies_lower_bound_against_estimate(self):
        # any witness ratio is a valid lower bound for the constant
        n, lam = 3, 0.4
        w = witness_lower_bound(hardy(2), lam, n)
        est = interp_constant(hardy(2), SigmaSet((lam,) * n), budget=12, seed=5)
        top = projection_operator_norm(hardy(2), SigmaSet((lam,) * n))
        assert w <= est + 1e-6
        assert est <= top + 1e-6

    def test_sandwich_on_repeated_point_classes(self, rng):
        # witness <= estimate <= operator norm for n <= 6, |lam| <= 0.8
        for _ in range(6):
            n = int(rng.integers(1, 7))
            lam = complex(*(0.8 / np.sqrt(2) * rng.uniform(-1, 1, size=2)))
            sigma = SigmaSet((lam,) * n)
            w = witness_lower_bound(hardy(2), lam, n)
            est = interp_constant(hardy(2), sigma, budget=4, nm_maxfev=50)
            top = projection_operator_norm(hardy(2), sigma)
            assert w <= est + 1e-6
            assert est <= top + 1e-6

    def test_monotone_in_r(self):
        for n in (2, 6):
            vals = [witness_lower_bound(hardy(2), r, n) for r in (0.0, 0.3, 0.6, 0.9)]
            assert all(b >= a - 1e-9 for a, b in zip(vals, vals[1:]))

    def test_h2_norm_of_transplant_matches_gram_oracle(self):
        # ||W o b_lam||_2^2 = sum W_j conj(W_k) lam^(j-k) via <b^j, b^k> = lam^(j-k)
        import discinterp as di

        n, lam = 6, 0.7
        base = di.hadamard_product(di.dirichlet_kernel(n), di.fejer_kernel(n))
        eta = -1.0
        W = di.CoeffSeries(base.coeffs * eta ** np.arange(n))
        f = di.compose_with_blaschke(W, lam)
        gram = np.fromfunction(
            lambda j, k: np.where(j >= k, lam ** (j - k), lam ** (k - j)), (n, n)
        )
        oracle = np.sqrt(np.real(W.coeffs.conj() @ gram @ W.coeffs))
        assert norm(hardy(2), f) == pytest.approx(oracle, rel=1e-9)

    def test_unsupported_space(self):
        with pytest.raises(UnsupportedSpace):
            witness_lower_bound(hardy(4), 0.0, 4)
        with pytest.raises(UnsupportedSpace):
            witness_lower_bound(seq_weighted(2, 1.25), 0.0, 4)


class TestInterpConstant:
    def test_single_origin(self):
        assert interp_constant(hardy(2), SigmaSet((0.0,)), budget=2) == pytest.approx(
            1.0, abs=1e-9
        )

    def test_single_point_closed_form(self):
        got = interp_constant(hardy(2), SigmaSet((0.8,)), budget=2)
        assert got == pytest.approx(5.0 / 3.0, abs=1e-9)

    def test_never_exceeds_projection_norm(self, rng):
        for _ in range(5):
            sigma = random_sigma(rng, n_max=4, r_max=0.75, distinct=True)
            est = interp_constant(hardy(2), sigma, budget=6, nm_maxfev=80)
            top = projection_operator_norm(hardy(2), sigma)
            assert est <= top + 1e-6

    def test_matches_literal_ratio_path(self, rng):
        # the solver's jet objective equals quotient(min-norm rep)/min-norm
        sigma = SigmaSet((0.3, -0.2 + 0.4j, 0.1))
        space = hardy(2)
        a = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        a = a / np.linalg.norm(a)
        res = min_norm_trace(space, sigma, a)
        literal = quotient_norm(res.interpolant, sigma).value / res.norm
        est = interp_constant(space, sigma, budget=4, nm_maxfev=60)
        assert literal <= est + 1e-6

    def test_jet_objective_consistency_multiplicity(self, rng):
        sigma = SigmaSet((0.5,) * 3)
        space = hardy(2)
        best_literal = 0.0
        for _ in range(4):
            a = rng.standard_normal(3) + 1j * rng.standard_normal(3)
            res = min_norm_trace(space, sigma, a)
            best_literal = max(
                best_literal, quotient_norm(res.interpolant, sigma).value / res.norm
            )
        est = interp_constant(space, sigma, budget=8, nm_maxfev=80)
        assert best_literal <= est * (1 + 1e-7) + 1e-9

    def test_rotation_invariance(self):
        sigma = SigmaSet((0.3, -0.5))
        v1 = interp_constant(hardy(2), sigma, budget=6, seed=2)
        v2 = interp_constant(hardy(2), sigma.rotated(1.1), budget=6, seed=2)
        assert v1 == pytest.approx(v2, abs=2e-5)

    def test_carleson_route_upper_bound(self):
        sigma = SigmaSet((0.4, -0.4))
        c_small = carleson_constant(sigma, budget=8, seed=7)
        c_big = carleson_constant(sigma, budget=16, seed=7)
        est = interp_constant(hardy(2), sigma, budget=8, seed=7)
        phi_max = max(eval_functional_norm(hardy(2), abs(p)) for p in sigma.points)
        if abs(c_big - c_small) < 1e-4:  # multistart certificate stabilised
            assert est <= c_big * phi_max + 1e-6


class TestSweep:
    def test_single_cell(self):
        res = bound_sweep(hardy(2), [1], [0.0], estimate_cap=1, budget=2)
        row = res.rows[0]
        assert row.estimate == pytest.approx(1.0, abs=1e-8)
        assert row.witness == pytest.approx(1.0, abs=1e-8)
        assert res.slope_witness is None

    def test_row_order_and_columns(self):
        res = bound_sweep(hardy(2), [2, 4], [0.0, 0.5])
        key = [(row.n, row.r) for row in res.rows]
        assert key == [(2, 0.0), (2, 0.5), (4, 0.0), (4, 0.5)]

    def test_slope_near_half_for_hardy2(self):
        res = bound_sweep(hardy(2), [4, 8, 16, 32], [0.5])
        assert res.slope_witness == pytest.approx(0.5, abs=0.15)

    def test_workers_do_not_change_rows(self):
        a = bound_sweep(hardy(2), [2, 4], [0.0, 0.5], workers=1)
        b = bound_sweep(hardy(2), [2, 4], [0.0, 0.5], workers=4)
        assert a == b
