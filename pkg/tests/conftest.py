"""Shared fixtures: the expensive trajectories are computed once per session."""

import math

import numpy as np
import pytest

from dgbo.evolution import EquationParams, evolve
from dgbo.functionals import ledger_cluster, spanning_sample_times
from dgbo.ground_state import kdv_profile, solve_petviashvili
from dgbo.spectral import Grid, RealField

E2 = math.e**2
E3 = math.e**3
LEDGER_DELTA = 0.05
LEDGER_ALPHAS = (0.25, 0.5, 0.75)


@pytest.fixture(scope="session")
def kdv_soliton_traj():
    """alpha=1 soliton on L=100, N=2^12, dt=1e-3, to T=10."""
    grid = Grid(4096, 100.0)
    u0 = RealField(grid, kdv_profile(grid.nodes))
    params = EquationParams(alpha=1.0, dt=1e-3, t_end=10.0)
    return evolve(u0, params, [0.0, 2.5, 5.0, 7.5, 10.0])


@pytest.fixture(scope="session")
def ledger_trajs():
    """Gaussian runs to t=e^3 with sample clusters at e^2 and e^3, per alpha."""
    grid = Grid(4096, 800.0)
    u0 = RealField(grid, np.exp(-((grid.nodes / 5.0) ** 2)))
    samples = sorted(
        set([0.0] + ledger_cluster(E2, LEDGER_DELTA) + ledger_cluster(E3, LEDGER_DELTA))
    )
    out = {}
    for alpha in LEDGER_ALPHAS:
        params = EquationParams(alpha=alpha, dt=1e-3, t_end=E3 + 2 * LEDGER_DELTA)
        out[alpha] = evolve(u0, params, samples)
    return out


@pytest.fixture(scope="session")
def decay_gaussian_traj():
    """Criterion-pinned decay run: Gaussian amplitude 1, width 5, alpha=1/2."""
    grid = Grid(8192, 1600.0)
    u0 = RealField(grid, np.exp(-((grid.nodes / 5.0) ** 2)))
    sched = spanning_sample_times(0.4, 0.5, 25, 10.0, 200.0)
    params = EquationParams(alpha=0.5, dt=0.02, t_end=200.0)
    return evolve(u0, params, sched)


@pytest.fixture(scope="session")
def decay_soliton_traj():
    """alpha=1/2 solitary wave escaping the origin-centered window."""
    grid = Grid(8192, 800.0)
    wave = solve_petviashvili(0.5, 1.0, grid, tol=1e-12)
    sched = spanning_sample_times(0.4, 0.5, 15, 10.0, 200.0)
    params = EquationParams(alpha=0.5, dt=0.01, t_end=200.0)
    return evolve(wave.profile, params, sched)


@pytest.fixture(scope="session")
def virial_traj():
    """Localized Gaussian to T=50 with uniform samples for the moment check."""
    grid = Grid(16384, 1600.0)
    u0 = RealField(grid, 3.0 * np.exp(-((grid.nodes / 5.0) ** 2)))
    params = EquationParams(alpha=0.5, dt=0.01, t_end=50.0)
    return evolve(u0, params, np.arange(0.0, 50.5, 0.5))


@pytest.fixture(scope="session")
def drift_traj():
    """Reference-resolution conservation run to T=100."""
    grid = Grid(4096, 400.0)
    u0 = RealField(grid, np.exp(-((grid.nodes / 5.0) ** 2)))
    params = EquationParams(alpha=0.5, dt=1e-3, t_end=100.0)
    return evolve(u0, params, [0.0, 25.0, 50.0, 75.0, 100.0])
