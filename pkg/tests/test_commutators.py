import math

import numpy as np
import pytest

from dgbo.commutators import (
    CommutatorSpec,
    apply_P_n,
    apply_R_n,
    coefficient,
    commutator_hd_f,
    gaussian_weight_spec,
    phi_weight_spec,
    remainder_bound_fft,
    step2_A3_decomposition,
    step2_A3_direct,
)
from dgbo.spectral import (
    Grid,
    RealField,
    fractional_derivative,
    hilbert,
    inner,
    lp_norm,
    random_band_limited,
)
from dgbo.weights import WeightSpec

RNG = np.random.default_rng(99)


def dense_matrix(op, grid):
    n = grid.n_points
    cols = []
    for j in range(n):
        e = np.zeros(n)
        e[j] = 1.0
        cols.append(op(RealField(grid, e)).samples)
    return np.array(cols).T


def windowed_random(grid, max_mode, rng, width_frac=10.0):
    env = np.exp(-((grid.nodes / (grid.length / width_frac)) ** 2))
    return RealField(grid, random_band_limited(grid, max_mode, rng).samples * env)


class TestCoefficient:
    def test_first_is_one(self):
        for a in (1.0, 2.5, 4.0):
            assert coefficient(a, 0) == 1.0

    def test_second_expansion(self):
        a = 2.5
        assert coefficient(a, 1) == pytest.approx((a**2 - 1.0) / 6.0, rel=1e-15)

    def test_vanishes_at_odd_integers(self):
        assert coefficient(1.0, 1) == 0.0
        assert coefficient(3.0, 2) == 0.0

    def test_rejects_negative_j(self):
        with pytest.raises(ValueError):
            coefficient(2.0, -1)


class TestSpecValidation:
    def test_admissibility_window(self):
        g = Grid(64, 20.0)
        f = RealField(g, np.exp(-(g.nodes**2)))
        CommutatorSpec(order=2.5, n=0, sigma=0.0, f=f)
        with pytest.raises(ValueError, match="admissibility"):
            CommutatorSpec(order=4.0, n=0, sigma=0.0, f=f)
        with pytest.raises(ValueError, match="admissibility"):
            CommutatorSpec(order=2.5, n=1, sigma=0.0, f=f)
        CommutatorSpec(order=2.5, n=1, sigma=0.5, f=f)  # 3 <= 3.5 <= 5

    def test_rejects_low_order(self):
        g = Grid(64, 20.0)
        f = RealField(g, np.exp(-(g.nodes**2)))
        with pytest.raises(ValueError):
            CommutatorSpec(order=0.5, n=0, sigma=0.0, f=f)

    def test_rejects_negative_operator_exponent(self):
        # mu - j < 0 for some j <= n
        g = Grid(64, 20.0)
        f = RealField(g, np.exp(-(g.nodes**2)))
        spec = CommutatorSpec(order=1.5, n=1, sigma=1.0, f=f)  # mu = 0.25 < 1
        with pytest.raises(ValueError, match="negative-order"):
            apply_P_n(spec, f)


class TestPn:
    def test_constant_weight_gives_zero(self):
        g = Grid(128, 30.0)
        spec = CommutatorSpec(order=2.5, n=0, sigma=0.0,
                              f=RealField(g, np.full(128, 2.0)))
        h = random_band_limited(g, 30, RNG)
        assert np.abs(apply_P_n(spec, h).samples).max() < 1e-12

    def test_unit_slope_weight_composition(self):
        # f' = 1 on the support of h: P_0(3) h = 3 D(D h)
        g = Grid(128, 60.0)
        h = RealField(g, np.exp(-(g.nodes**2) / 4.0) * np.cos(g.nodes))
        spec = CommutatorSpec(order=3.0, n=0, sigma=0.0,
                              f=RealField(g, np.zeros(128)),
                              odd_derivatives=(np.ones(128),))
        got = apply_P_n(spec, h)
        want = fractional_derivative(fractional_derivative(h, 1.0), 1.0)
        assert np.abs(got.samples - 3.0 * want.samples).max() <= 1e-10

    def test_self_adjoint(self):
        g = Grid(96, 40.0)
        spec = gaussian_weight_spec(g, order=2.5, n=0, width=5.0)
        h1 = windowed_random(g, 25, RNG, width_frac=8.0)
        h2 = windowed_random(g, 25, RNG, width_frac=8.0)
        lhs = inner(apply_P_n(spec, h1), h2)
        rhs = inner(h1, apply_P_n(spec, h2))
        assert lhs == pytest.approx(rhs, rel=1e-10)

    def test_dense_oracle(self):
        g = Grid(64, 30.0)
        spec = gaussian_weight_spec(g, order=2.5, n=0, width=4.0)
        mat = dense_matrix(lambda v: apply_P_n(spec, v), g)
        assert np.abs(mat - mat.T).max() <= 1e-10 * np.abs(mat).max()


class TestRn:
    def test_constant_weight_gives_zero(self):
        g = Grid(128, 30.0)
        spec = CommutatorSpec(order=2.5, n=0, sigma=0.0,
                              f=RealField(g, np.full(128, -0.7)))
        h = random_band_limited(g, 30, RNG)
        assert np.abs(apply_R_n(spec, h).samples).max() < 1e-11

    def test_dense_oracle_single_mode(self):
        g = Grid(64, 30.0)
        spec = gaussian_weight_spec(g, order=2.5, n=0, width=4.0)
        mat = dense_matrix(lambda v: apply_R_n(spec, v), g)
        h = RealField(g, np.cos(2.0 * math.pi * 5 * g.nodes / g.length))
        got = apply_R_n(spec, h).samples
        want = mat @ h.samples
        assert np.abs(got - want).max() <= 1e-10 * max(1e-30, np.abs(want).max())

    def test_defining_identity_reassembles_commutator(self):
        g = Grid(256, 120.0)
        spec = gaussian_weight_spec(g, order=2.7, n=0, width=10.0)
        for _ in range(5):
            h = windowed_random(g, 60, RNG)
            comm = commutator_hd_f(spec, h).samples
            rebuilt = -(
                apply_R_n(spec, h).samples
                + 0.5 * (apply_P_n(spec, h).samples
                         - hilbert(apply_P_n(spec, hilbert(h))).samples)
            )
            assert np.abs(rebuilt - comm).max() <= 1e-10 * np.abs(comm).max()

    def test_linearity(self):
        g = Grid(128, 60.0)
        spec = phi_weight_spec(g, 0.5, 6.0)
        h1 = windowed_random(g, 30, RNG)
        h2 = windowed_random(g, 30, RNG)
        combo = RealField(g, 2.0 * h1.samples + 3.0 * h2.samples)
        lhs = apply_R_n(spec, combo).samples
        rhs = 2.0 * apply_R_n(spec, h1).samples + 3.0 * apply_R_n(spec, h2).samples
        assert np.abs(lhs - rhs).max() <= 1e-12 * max(1.0, np.abs(lhs).max())

    def test_general_n_reassembly(self):
        # n = 1 branch with spectral odd derivatives of a decaying weight
        g = Grid(256, 120.0)
        spec = gaussian_weight_spec(g, order=4.0, n=1, width=10.0)
        h = windowed_random(g, 50, RNG)
        comm = commutator_hd_f(spec, h).samples
        rebuilt = -(
            apply_R_n(spec, h).samples
            + 0.5 * (apply_P_n(spec, h).samples
                     - hilbert(apply_P_n(spec, hilbert(h))).samples)
        )
        assert np.abs(rebuilt - comm).max() <= 1e-10 * np.abs(comm).max()


class TestRemainderBound:
    def test_bound_with_unit_constant(self):
        # ||R_0(a+2) h|| <= 1.05 * (1/2pi) * L1(|k|^(a+2) f_hat) * ||h||
        g = Grid(512, 200.0)
        for alpha in (0.25, 0.5, 0.75):
            spec = phi_weight_spec(g, alpha, 10.0)
            for _ in range(30):
                h = windowed_random(g, 120, RNG)
                ratio = lp_norm(apply_R_n(spec, h), 2) / lp_norm(h, 2)
                assert ratio <= 1.05 * spec.symbol_l1

    def test_fft_bound_route_agrees_for_decaying_weight(self):
        # for a Gaussian weight the analytic route is unavailable; the fft
        # estimate must reproduce a quadrature of the same transform
        g = Grid(1024, 200.0)
        spec = gaussian_weight_spec(g, order=2.5, n=0, width=6.0)
        got = remainder_bound_fft(spec)
        # continuum transform of exp(-(x/w)^2) is w*sqrt(pi)*exp(-w^2 k^2/4)
        from scipy.integrate import quad

        w = 6.0
        want = (
            quad(lambda k: k**2.5 * w * math.sqrt(math.pi)
                 * math.exp(-(w * k / 2.0) ** 2), 0.0, np.inf)[0]
            / math.pi
        )
        # rectangle rule across the |k|^(a) kink at k=0 limits the agreement
        assert got == pytest.approx(want, rel=1e-4)


class TestA3Decomposition:
    def setup_method(self):
        self.grid = Grid(256, 400.0)
        env = np.exp(-((self.grid.nodes / 25.0) ** 2))
        self.u = RealField(
            self.grid, random_band_limited(self.grid, 60, RNG).samples * env
        )
        self.weight = WeightSpec(0.5, 12.0)

    def test_zero_field(self):
        z = RealField(self.grid, np.zeros(256))
        parts = step2_A3_decomposition(z, self.weight, 0.5, 1.0)
        assert parts == (0.0, 0.0, 0.0)

    def test_signs(self):
        a31, a32, a33 = step2_A3_decomposition(self.u, self.weight, 0.5, 0.3)
        assert a32 >= 0.0 and a33 >= 0.0

    def test_closure_against_direct_form(self):
        parts = step2_A3_decomposition(self.u, self.weight, 0.5, 0.3)
        direct = step2_A3_direct(self.u, self.weight, 0.5, 0.3)
        assert sum(parts) == pytest.approx(direct, rel=1e-8)

    def test_weight_alpha_must_match(self):
        with pytest.raises(ValueError):
            step2_A3_decomposition(self.u, WeightSpec(0.25, 12.0), 0.5, 1.0)
