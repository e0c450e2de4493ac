import math

import numpy as np
import pytest
from scipy import integrate as sciint

from dgbo.spectral import (
    Grid,
    RealField,
    SpectralField,
    dealias,
    derivative,
    fractional_derivative,
    hilbert,
    inverse_transform,
    random_band_limited,
    transform,
    translate,
)

RNG = np.random.default_rng(2024)


def grid_2pi(n=256):
    return Grid(n, 2.0 * math.pi)


class TestGrid:
    def test_invariants(self):
        g = Grid(64, 10.0)
        assert g.spacing == 10.0 / 64
        assert g.nodes[0] == -5.0
        assert np.allclose(np.diff(g.nodes), g.spacing)
        k = g.wavenumbers
        m = g.mode_numbers
        assert np.allclose(k, 2.0 * math.pi * m / g.length)
        assert m.min() == -32 and m.max() == 31

    @pytest.mark.parametrize("n", [15, 14, 0, 17])
    def test_rejects_bad_sizes(self, n):
        with pytest.raises(ValueError):
            Grid(n, 1.0)

    def test_rejects_bad_length(self):
        with pytest.raises(ValueError):
            Grid(64, -1.0)


class TestFields:
    def test_roundtrip(self):
        g = grid_2pi()
        u = random_band_limited(g, 80, RNG)
        v = inverse_transform(transform(u))
        assert np.abs(v.samples - u.samples).max() <= 1e-12 * np.abs(u.samples).max()

    def test_hermitian_symmetry(self):
        g = grid_2pi(64)
        u = random_band_limited(g, 20, RNG)
        c = transform(u).coefficients
        m = g.mode_numbers
        for mm in range(1, 20):
            i, j = np.where(m == mm)[0][0], np.where(m == -mm)[0][0]
            assert c[j] == pytest.approx(np.conj(c[i]), abs=1e-9)

    def test_rejects_nan(self):
        g = grid_2pi(16)
        with pytest.raises(ValueError):
            RealField(g, np.full(16, np.nan))

    def test_samples_immutable(self):
        g = grid_2pi(16)
        u = RealField(g, np.zeros(16))
        with pytest.raises(ValueError):
            u.samples[0] = 1.0


class TestFractionalDerivative:
    def test_identity_at_zero_order(self):
        g = grid_2pi()
        u = random_band_limited(g, 50, RNG, zero_mean=False)
        assert np.array_equal(fractional_derivative(u, 0.0).samples, u.samples)

    @pytest.mark.parametrize("s", [0.3, 0.5, 1.0, 1.7])
    def test_single_mode(self, s):
        g = grid_2pi()
        u = RealField(g, np.sin(3.0 * g.nodes))
        out = fractional_derivative(u, s)
        assert np.abs(out.samples - 3.0**s * np.sin(3.0 * g.nodes)).max() < 1e-11

    def test_lorentzian_first_order(self):
        # continuum transform of 4/(1+x^2) maps |k| multiplication to the
        # closed form 4(1-x^2)/(1+x^2)^2; cross-checked by quadrature below
        g = Grid(2**14, 400.0)
        u = RealField(g, 4.0 / (1.0 + g.nodes**2))
        out = fractional_derivative(u, 1.0)
        exact = 4.0 * (1.0 - g.nodes**2) / (1.0 + g.nodes**2) ** 2
        assert np.abs(out.samples - exact).max() <= 1e-3

    @pytest.mark.parametrize("x", [0.0, 0.5, 2.0])
    def test_lorentzian_oracle_by_quadrature(self, x):
        # (1/pi) * integral_0^inf k * exp(-k) * cos(k x) dk * 4 ... evaluated
        # directly from the known transform of the Lorentzian
        val, _ = sciint.quad(lambda k: 4.0 * k * math.exp(-k) * math.cos(k * x),
                             0.0, np.inf)
        closed = 4.0 * (1.0 - x**2) / (1.0 + x**2) ** 2
        assert val == pytest.approx(closed, abs=1e-10)

    def test_rejects_negative_order(self):
        g = grid_2pi(16)
        with pytest.raises(ValueError):
            fractional_derivative(RealField(g, np.zeros(16)), -0.5)

    def test_semigroup_on_zero_mean(self):
        g = grid_2pi()
        u = random_band_limited(g, 60, RNG)
        a = fractional_derivative(u, 1.2)
        b = fractional_derivative(fractional_derivative(u, 0.7), 0.5)
        assert np.abs(a.samples - b.samples).max() <= 1e-10 * np.abs(a.samples).max()


class TestHilbert:
    def test_cos_to_sin(self):
        g = grid_2pi()
        out = hilbert(RealField(g, np.cos(g.nodes)))
        assert np.abs(out.samples - np.sin(g.nodes)).max() < 1e-13

    def test_constant_to_zero(self):
        g = grid_2pi(64)
        out = hilbert(RealField(g, np.full(64, 3.7)))
        assert np.abs(out.samples).max() == 0.0

    def test_involution_on_zero_mean(self):
        g = grid_2pi()
        u = random_band_limited(g, 70, RNG)
        out = hilbert(hilbert(u))
        assert np.abs(out.samples + u.samples).max() <= 1e-12 * np.abs(u.samples).max()

    def test_composition_equals_d(self):
        g = grid_2pi()
        u = random_band_limited(g, 70, RNG)
        lhs = fractional_derivative(u, 1.0)
        rhs = hilbert(derivative(u))
        assert np.abs(lhs.samples - rhs.samples).max() <= 1e-12 * np.abs(
            lhs.samples
        ).max()


class TestDerivative:
    def test_single_mode(self):
        g = grid_2pi()
        out = derivative(RealField(g, np.sin(2.0 * g.nodes)))
        assert np.abs(out.samples - 2.0 * np.cos(2.0 * g.nodes)).max() < 1e-12

    def test_constant(self):
        g = grid_2pi(64)
        out = derivative(RealField(g, np.full(64, -1.5)))
        assert np.abs(out.samples).max() == 0.0


class TestDealias:
    def test_band_limited_unchanged(self):
        g = grid_2pi(96)
        u = random_band_limited(g, 96 // 3, RNG)
        before = transform(u)
        after = dealias(before)
        assert np.allclose(after.coefficients, before.coefficients)

    def test_top_mode_removed(self):
        g = grid_2pi(64)
        u = RealField(g, np.cos((64 // 2 - 1) * g.nodes))
        after = dealias(transform(u))
        assert np.abs(after.coefficients).max() < 1e-10

    def test_product_matches_direct_convolution(self):
        # n indivisible by 3, so no alias image lands on the kept band edge
        n = 64
        g = grid_2pi(n)
        a = random_band_limited(g, n // 3, RNG)
        b = random_band_limited(g, n // 3, RNG)
        prod = RealField(g, a.samples * b.samples)
        got = dealias(transform(prod)).coefficients
        fa, fb = np.fft.fft(a.samples), np.fft.fft(b.samples)
        m = g.mode_numbers
        index = {int(mm): i for i, mm in enumerate(m)}
        want = np.zeros(n, dtype=complex)
        for i, mi in enumerate(m):
            if abs(mi) > n // 3:
                continue
            acc = 0.0 + 0.0j
            for j, mj in enumerate(m):
                k = int(mi - mj)
                if k in index:
                    acc += fa[j] * fb[index[k]]
            want[i] = acc / n
        assert np.abs(got - want).max() <= 1e-12 * np.abs(want).max()


class TestParsevalAndTranslate:
    def test_parseval(self):
        g = grid_2pi()
        u = random_band_limited(g, 60, RNG, zero_mean=False)
        uh = transform(u)
        lhs = (u.samples**2).sum() * g.spacing
        rhs = (np.abs(uh.coefficients) ** 2).sum() * g.length / g.n_points**2
        assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_translate_single_mode(self):
        g = grid_2pi()
        u = RealField(g, np.cos(3.0 * g.nodes))
        out = translate(u, 0.4)
        assert np.abs(out.samples - np.cos(3.0 * (g.nodes - 0.4))).max() < 1e-12

    def test_spectral_field_validation(self):
        g = grid_2pi(16)
        with pytest.raises(ValueError):
            SpectralField(g, np.zeros(8, dtype=complex))
