"""Config-driven experiment execution: evolve, diagnose, persist, render.

Outputs per run directory:

    resolved.json     the validated configuration, echoed
    conserved.csv     t, mass, l2, energy, l1  (one row per sample)
    j_series.csv      t, J, runmin_J           (when weighted_j is on)
    ledgers.csv       kind, t, ddt, A1..A4, A31, A32, A33, closure, closure_rel
    virial.csv        t, x_moment
    state_initial.ckpt / state_final.ckpt
    figures/*.png     one figure per delimited file
    summary.json      machine-readable run report (deterministic)

All floats in delimited output print with repr-faithful %.17g, so identical
seeds and configs reproduce every file bit-exactly.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from . import plots
from .checkpoint import write_checkpoint
from .config import ConfigError, RunConfig
from .evolution import (
    EquationParams,
    EvolutionAbort,
    evolve,
    fit_translation,
    l1_monitor,
    transport_dt_limit,
)
from .functionals import (
    decay_report,
    spanning_sample_times,
    step1_ledger,
    step2_ledger,
    virial,
)
from .scenarios import build_initial
from .spectral import Grid, lp_norm, translate
from .weights import WindowLaw

__all__ = ["run"]


def _fmt(x) -> str:
    return f"{float(x):.17g}"


def _write_csv(path, header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) if isinstance(v, (int, float, np.floating))
                              else str(v) for v in row))
    Path(path).write_text("\n".join(lines) + "\n")


def _sample_times(cfg: RunConfig):
    sched = cfg.schedule
    if sched["type"] == "uniform":
        step = sched["dt_sample"]
        n = int(math.floor(cfg.t_end / step + 1e-9))
        times = [0.0] + [step * (i + 1) for i in range(n)]
    elif sched["type"] == "paper":
        times = [0.0] + list(
            spanning_sample_times(sched["epsilon"], cfg.alpha, sched["count"],
                                  sched["t_start"], cfg.t_end)
        )
    else:
        times = list(sched["times"])
        if times[0] != 0.0:
            times = [0.0] + times
    for which in ("step1_times", "step2_times"):
        for t in cfg.diagnostics[which]:
            delta = cfg.diagnostics["ledger_delta"]
            times += [t + j * delta for j in (-2, -1, 0, 1, 2)]
    out = sorted(set(round(t, 12) for t in times))
    if out[-1] > cfg.t_end:
        raise ConfigError("diagnostics", "ledger cluster extends beyond t_end")
    return out


def run(cfg: RunConfig) -> dict:
    """Execute one configured run; returns the summary dict (also written)."""
    out_dir = Path(cfg.output_dir)
    fig_dir = out_dir / "figures"
    out_dir.mkdir(parents=True, exist_ok=True)
    fig_dir.mkdir(exist_ok=True)

    grid = Grid(cfg.n_points, cfg.length)
    u0 = build_initial(cfg, grid)
    limit = transport_dt_limit(u0)
    if cfg.dt > limit:
        raise ConfigError("dt", f"violates the transport heuristic dt <= {limit:.6g}")

    window = None
    if cfg.window is not None:
        window = WindowLaw(a=cfg.window["a"], c=cfg.window["c"], alpha=cfg.alpha)

    times = _sample_times(cfg)
    params = EquationParams(alpha=cfg.alpha, dt=cfg.dt, t_end=cfg.t_end,
                            dealias=cfg.dealias, nonlinear=cfg.nonlinear)

    (out_dir / "resolved.json").write_text(
        json.dumps(cfg.raw, indent=2, sort_keys=True) + "\n")

    summary = {"scenario": cfg.scenario, "alpha": cfg.alpha, "seed": cfg.seed,
               "status": "ok", "outputs": []}

    def emit(name):
        summary["outputs"].append(name)

    try:
        traj = evolve(u0, params, times)
    except EvolutionAbort as abort:
        traj = abort.trajectory
        summary["status"] = "aborted"
        summary["abort"] = {"t_fail": abort.t_fail, "message": str(abort)}

    write_checkpoint(out_dir / "state_initial.ckpt", traj.states[0],
                     cfg.alpha, float(traj.times[0]))
    write_checkpoint(out_dir / "state_final.ckpt", traj.states[-1],
                     cfg.alpha, float(traj.times[-1]))
    emit("state_initial.ckpt")
    emit("state_final.ckpt")

    if cfg.diagnostics["conserved"]:
        rows = [
            (t, c.mass, c.l2, c.energy, l1)
            for t, c, l1 in zip(traj.times, traj.conserved, traj.l1_norms)
        ]
        _write_csv(out_dir / "conserved.csv",
                   ["t", "mass", "l2", "energy", "l1"], rows)
        emit("conserved.csv")
        mass = np.array([c.mass for c in traj.conserved])
        l2 = np.array([c.l2 for c in traj.conserved])
        energy = np.array([c.energy for c in traj.conserved])
        plots.render_conserved(traj.times, mass, l2, energy,
                               fig_dir / "conserved.png")
        emit("figures/conserved.png")
        summary["drifts"] = {
            "mass": float(np.abs(mass - mass[0]).max()),
            "l2_rel": float(np.abs(l2 - l2[0]).max() / abs(l2[0])) if l2[0] else 0.0,
            "energy_rel": float(np.abs(energy - energy[0]).max() / abs(energy[0]))
            if energy[0] else 0.0,
        }

    if cfg.diagnostics["l1"] and traj.times.size >= 3:
        fit = l1_monitor(traj)
        summary["l1_fit"] = {
            "c0": fit.c0, "a_hat": fit.a_hat, "ci95": list(fit.ci95),
            "exponent_bound": fit.exponent_bound,
            "within_bound": fit.within_bound, "degenerate": fit.degenerate,
        }

    if cfg.diagnostics["weighted_j"] and window is not None:
        rep = decay_report(traj, window, cfg.alpha)
        _write_csv(out_dir / "j_series.csv", ["t", "J", "runmin_J"],
                   list(zip(rep.times, rep.j_values, rep.running_min)))
        emit("j_series.csv")
        plots.render_j_series(rep.times, rep.j_values, rep.running_min,
                              fig_dir / "j_series.png")
        emit("figures/j_series.png")
        summary["j_series"] = {
            "first": float(rep.j_values[0]),
            "last": float(rep.j_values[-1]),
            "runmin_final": float(rep.running_min[-1]),
            "decay_factor": float(rep.j_values[0] / rep.running_min[-1])
            if rep.running_min[-1] > 0 else math.inf,
            "seam_fraction_max": rep.seam_fraction_max,
        }

    ledgers = []
    for kind, fn in (("step1", step1_ledger), ("step2", step2_ledger)):
        for t in cfg.diagnostics[f"{kind}_times"]:
            ledgers.append(fn(traj, window, cfg.alpha, t))
    if ledgers:
        rows = []
        for led in ledgers:
            split = led.a3_split or (math.nan, math.nan, math.nan)
            rows.append((led.kind, led.t, led.ddt_term, led.a1, led.a2, led.a3,
                         led.a4, *split, led.closure_residual, led.closure_rel))
        _write_csv(out_dir / "ledgers.csv",
                   ["kind", "t", "ddt", "A1", "A2", "A3", "A4",
                    "A31", "A32", "A33", "closure", "closure_rel"], rows)
        emit("ledgers.csv")
        plots.render_ledgers(ledgers, fig_dir / "ledgers.png")
        emit("figures/ledgers.png")
        summary["ledger_max_closure_rel"] = max(l.closure_rel for l in ledgers)
        summary["ledger_fd_suspect"] = any(l.fd_suspect for l in ledgers)

    if cfg.diagnostics["virial"]:
        rep = virial(traj)
        _write_csv(out_dir / "virial.csv", ["t", "x_moment"],
                   list(zip(rep.times, rep.x_moment)))
        emit("virial.csv")
        plots.render_virial(rep.times, rep.x_moment, rep.slope, rep.m_half,
                            fig_dir / "virial.png")
        emit("figures/virial.png")
        summary["virial"] = {
            "slope": rep.slope, "m_half": rep.m_half,
            "slope_rel_error": abs(rep.slope / rep.m_half - 1.0),
            "max_rel_mismatch": rep.max_rel_mismatch,
        }

    if cfg.initial["type"] == "soliton" and summary["status"] == "ok":
        speed = cfg.initial["speed"]
        t_final = float(traj.times[-1])
        expected = translate(traj.states[0], speed * t_final)
        err = float(
            np.abs(traj.states[-1].samples - expected.samples).max()
            / lp_norm(traj.states[0], np.inf)
        )
        shift = fit_translation(traj.states[0], traj.states[-1])
        wrapped = (speed * t_final + 0.5 * grid.length) % grid.length - 0.5 * grid.length
        summary["soliton"] = {
            "translation_rel_error": err,
            "fitted_shift": shift,
            "position_error": abs(shift - wrapped),
        }

    plots.render_profiles(grid.nodes, traj.states[0].samples,
                          traj.states[-1].samples, float(traj.times[-1]),
                          fig_dir / "profiles.png")
    emit("figures/profiles.png")

    summary["outputs"].sort()
    (out_dir / "summary.json").write_text(
        json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return summary
