import math

import numpy as np
import pytest

from dgbo.ground_state import (
    PetviashviliError,
    SolitaryWave,
    bo_profile,
    decay_bound_check,
    kdv_profile,
    profile_equation_residual,
    solve_petviashvili,
)
from dgbo.spectral import Grid, RealField


class TestClosedFormResiduals:
    def test_kdv_profile_solves_equation(self):
        # hyperbolic identity: with Q = A sech^2(x/2), Q - Q'' = (3A/2) sech^4
        # and Q^2/2 = (A^2/2) sech^4, equal exactly when A = 3
        grid = Grid(4096, 100.0)
        Q = RealField(grid, kdv_profile(grid.nodes))
        assert profile_equation_residual(Q, 1.0, 1.0) <= 1e-8

    def test_bo_profile_solves_equation(self):
        # 4/(1+x^2) + D(4/(1+x^2)) = 8/(1+x^2)^2 = Q^2/2 exactly; on the
        # periodic box the algebraic tails limit the spectral residual
        grid = Grid(2**14, 400.0 * math.pi)
        Q = RealField(grid, bo_profile(grid.nodes))
        assert profile_equation_residual(Q, 0.0, 1.0) <= 1e-3

    def test_zero_field(self):
        grid = Grid(64, 10.0)
        assert profile_equation_residual(RealField(grid, np.zeros(64)), 0.5, 1.0) == 0.0


class TestPetviashvili:
    def test_kdv_endpoint(self):
        grid = Grid(4096, 100.0)
        wave = solve_petviashvili(1.0, 1.0, grid, tol=1e-12)
        err = np.abs(wave.profile.samples - kdv_profile(grid.nodes)).max()
        assert err <= 1e-6
        assert abs(wave.gamma_final - 1.0) <= 1e-12

    def test_bo_boundary(self):
        grid = Grid(2**14, 400.0 * math.pi)
        wave = solve_petviashvili(0.0, 1.0, grid, tol=1e-10)
        err = np.abs(wave.profile.samples - bo_profile(grid.nodes)).max()
        assert err <= 1e-3

    def test_speed_scaling(self):
        # profile at speed kappa^(1+alpha) is kappa^(1+alpha) Q_1(kappa x)
        alpha, kappa = 0.5, 2.0
        grid = Grid(8192, 800.0)
        base = solve_petviashvili(alpha, 1.0, grid, tol=1e-12)
        speed = kappa ** (1.0 + alpha)
        fast = solve_petviashvili(alpha, speed, grid, tol=1e-12)
        want = speed * np.interp(kappa * grid.nodes, grid.nodes,
                                 base.profile.samples)
        core = np.abs(grid.nodes) <= grid.length / 8.0
        err = np.abs(fast.profile.samples - want)[core].max()
        assert err <= 1e-6 * fast.profile.samples.max()

    def test_profile_even_positive_decreasing(self):
        grid = Grid(2048, 400.0)
        wave = solve_petviashvili(0.5, 1.0, grid, tol=1e-11)
        q = wave.profile.samples
        assert np.all(q > 0.0)
        reflected = np.roll(q[::-1], 1)
        assert np.abs(q - reflected).max() <= 1e-9
        right = q[grid.n_points // 2:]
        assert np.all(np.diff(right) < 1e-12)

    def test_translation_equivariance(self):
        grid = Grid(1024, 200.0)
        x = grid.nodes
        base_guess = RealField(grid, 3.0 * np.exp(-(x**2) / 4.0))
        w0 = solve_petviashvili(0.5, 1.0, grid, tol=1e-11, initial=base_guess)
        shift = 37
        shifted_guess = RealField(grid, np.roll(base_guess.samples, shift))
        w1 = solve_petviashvili(0.5, 1.0, grid, tol=1e-11, initial=shifted_guess)
        assert np.abs(np.roll(w0.profile.samples, shift)
                      - w1.profile.samples).max() <= 1e-9

    def test_residual_consistent_with_tolerance(self):
        grid = Grid(2048, 400.0)
        tol = 1e-11
        wave = solve_petviashvili(0.5, 1.0, grid, tol=tol)
        assert wave.residual <= 10.0 * tol

    def test_nonconvergence_reported(self):
        grid = Grid(512, 100.0)
        with pytest.raises(PetviashviliError) as err:
            solve_petviashvili(0.5, 1.0, grid, tol=1e-13, max_iter=2)
        assert err.value.reason == "no_convergence"

    def test_collapse_reported(self):
        grid = Grid(512, 100.0)
        zero = RealField(grid, np.zeros(512))
        with pytest.raises(PetviashviliError) as err:
            solve_petviashvili(0.5, 1.0, grid, initial=zero)
        assert err.value.reason == "collapse"

    def test_rejects_bad_parameters(self):
        grid = Grid(512, 100.0)
        with pytest.raises(ValueError):
            solve_petviashvili(1.5, 1.0, grid)
        with pytest.raises(ValueError):
            solve_petviashvili(0.5, -1.0, grid)


class TestDecayBound:
    def test_bo_exact_ratio(self):
        grid = Grid(8192, 800.0)
        Q = RealField(grid, bo_profile(grid.nodes))
        wave = SolitaryWave(0.0, 1.0, Q, 0.0, 0, 1.0)
        rep = decay_bound_check(wave)
        assert rep.c_alpha == pytest.approx(4.0, abs=1e-9)

    def test_kdv_ratio_finite_and_decaying(self):
        grid = Grid(4096, 100.0)
        wave = solve_petviashvili(1.0, 1.0, grid, tol=1e-12)
        rep = decay_bound_check(wave)
        assert math.isfinite(rep.c_alpha)
        assert rep.tail_monotone  # exponential beats algebraic: ratio falls

    def test_intermediate_alpha_monotone_tail(self):
        grid = Grid(8192, 800.0)
        wave = solve_petviashvili(0.5, 1.0, grid, tol=1e-12)
        rep = decay_bound_check(wave)
        assert math.isfinite(rep.c_alpha)
        assert rep.tail_monotone
