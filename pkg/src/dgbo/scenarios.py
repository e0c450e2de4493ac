"""Initial-data builders and the named scenario presets."""

from __future__ import annotations

import math

import numpy as np

from .checkpoint import read_checkpoint
from .config import ConfigError, RunConfig
from .ground_state import bo_profile, kdv_profile, solve_petviashvili
from .spectral import Grid, RealField

__all__ = ["build_initial", "soliton_profile", "preset_config", "PRESETS"]

E2 = math.e**2
E3 = math.e**3


def soliton_profile(alpha: float, speed: float, grid: Grid) -> RealField:
    """Solitary-wave initial data at the given speed.

    Endpoint profiles use the closed forms through the scaling
    Q_V(x) = k^(1+alpha) Q_1(k x), k = V^(1/(1+alpha)); interior alpha goes
    through the fixed-point solver.
    """
    if alpha in (0.0, 1.0):
        kappa = speed ** (1.0 / (1.0 + alpha))
        base = kdv_profile if alpha == 1.0 else bo_profile
        return RealField(grid, kappa ** (1.0 + alpha) * base(kappa * grid.nodes))
    return solve_petviashvili(alpha, speed, grid, tol=1e-12).profile


def build_initial(cfg: RunConfig, grid: Grid) -> RealField:
    spec = cfg.initial
    kind = spec["type"]
    x = grid.nodes
    if kind == "gaussian":
        center = spec.get("center", 0.0)
        return RealField(
            grid,
            spec["amplitude"] * np.exp(-(((x - center) / spec["width"]) ** 2)),
        )
    if kind == "soliton":
        return soliton_profile(cfg.alpha, spec["speed"], grid)
    if kind == "mode":
        k = 2.0 * math.pi * spec["k_index"] / grid.length
        return RealField(grid, spec["amplitude"] * np.cos(k * x))
    if kind == "file":
        field, alpha, _t = read_checkpoint(spec["path"])
        if field.grid != grid:
            raise ConfigError(
                "initial.path",
                f"checkpoint grid ({field.grid.n_points}, {field.grid.length}) "
                f"does not match config grid ({grid.n_points}, {grid.length})",
            )
        if abs(alpha - cfg.alpha) > 1e-12:
            raise ConfigError("initial.path",
                              f"checkpoint alpha {alpha} differs from config {cfg.alpha}")
        return field
    raise ConfigError("initial.type", f"unknown type {kind!r}")


def _ledger_clusters(times, delta):
    out = []
    for t in times:
        out += [t + j * delta for j in (-2, -1, 0, 1, 2)]
    return out


PRESETS = {
    # soliton translated by +10 at alpha=1; conservation and position checks
    "soliton-translate": {
        "schema_version": 1,
        "scenario": "soliton-translate",
        "alpha": 1.0,
        "grid": {"n_points": 4096, "length": 100.0},
        "dt": 0.001,
        "t_end": 10.0,
        "initial": {"type": "soliton", "speed": 1.0},
        "schedule": {"type": "uniform", "dt_sample": 2.5},
        "diagnostics": {"conserved": True, "l1": True},
        "output_dir": "out/soliton-translate",
        "seed": 0,
    },
    # both identity ledgers audited at t = e^2 and e^3
    "identity-audit": {
        "schema_version": 1,
        "scenario": "identity-audit",
        "alpha": 0.5,
        "grid": {"n_points": 4096, "length": 800.0},
        "dt": 0.001,
        "t_end": E3 + 0.2,
        "initial": {"type": "gaussian", "amplitude": 1.0, "width": 5.0, "center": 0.0},
        "window": {"a": 0.0, "c": 1.0},
        "schedule": {"type": "explicit",
                     "times": sorted(_ledger_clusters([E2, E3], 0.05))},
        "diagnostics": {"conserved": True, "l1": False, "weighted_j": True,
                        "step1_times": [E2, E3], "step2_times": [E2, E3],
                        "ledger_delta": 0.05},
        "output_dir": "out/identity-audit",
        "seed": 0,
    },
    # dispersing Gaussian against the growing window, J series to t=200
    "decay-gaussian": {
        "schema_version": 1,
        "scenario": "decay-gaussian",
        "alpha": 0.5,
        "grid": {"n_points": 8192, "length": 1600.0},
        "dt": 0.02,
        "t_end": 200.0,
        "initial": {"type": "gaussian", "amplitude": 1.0, "width": 5.0, "center": 0.0},
        "window": {"a": 0.0, "c": 1.0},
        "schedule": {"type": "paper", "epsilon": 0.4, "count": 25, "t_start": 10.0},
        "diagnostics": {"conserved": True, "l1": True, "weighted_j": True},
        "output_dir": "out/decay-gaussian",
        "seed": 0,
    },
    # soliton escaping the origin-centered window
    "decay-soliton": {
        "schema_version": 1,
        "scenario": "decay-soliton",
        "alpha": 0.5,
        "grid": {"n_points": 8192, "length": 800.0},
        "dt": 0.01,
        "t_end": 200.0,
        "initial": {"type": "soliton", "speed": 1.0},
        "window": {"a": 0.0, "c": 1.0},
        "schedule": {"type": "paper", "epsilon": 0.4, "count": 15, "t_start": 10.0},
        "diagnostics": {"conserved": True, "l1": True, "weighted_j": True},
        "output_dir": "out/decay-soliton",
        "seed": 0,
    },
    # first-moment growth at rate M/2
    "virial-gaussian": {
        "schema_version": 1,
        "scenario": "virial-gaussian",
        "alpha": 0.5,
        "grid": {"n_points": 16384, "length": 1600.0},
        "dt": 0.01,
        "t_end": 50.0,
        "initial": {"type": "gaussian", "amplitude": 3.0, "width": 5.0, "center": 0.0},
        "schedule": {"type": "uniform", "dt_sample": 0.5},
        "diagnostics": {"conserved": True, "l1": True, "virial": True},
        "output_dir": "out/virial-gaussian",
        "seed": 0,
    },
    # near-linear single mode; exact phase oracle
    "linear-mode": {
        "schema_version": 1,
        "scenario": "linear-mode",
        "alpha": 0.35,
        "grid": {"n_points": 256, "length": 2.0 * math.pi},
        "dt": 0.001,
        "t_end": 1.0,
        "initial": {"type": "mode", "k_index": 3, "amplitude": 1e-8},
        "schedule": {"type": "uniform", "dt_sample": 0.5},
        "diagnostics": {"conserved": True, "l1": False},
        "output_dir": "out/linear-mode",
        "seed": 0,
    },
}


def preset_config(name: str) -> dict:
    if name not in PRESETS:
        raise KeyError(f"unknown preset {name!r}; have {sorted(PRESETS)}")
    import copy

    return copy.deepcopy(PRESETS[name])
