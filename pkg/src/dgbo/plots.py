"""Figure rendering for run reports.

Every renderer takes plain arrays and writes one PNG next to the delimited
output it illustrates.  The Agg backend is forced so runs work headless, and
PNG metadata is stripped for bit-reproducible outputs.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = [
    "render_profiles",
    "render_conserved",
    "render_j_series",
    "render_virial",
    "render_ledgers",
]

_META = {"metadata": {"Software": None}}


def _save(fig, path):
    fig.savefig(path, dpi=110, **_META)
    plt.close(fig)


def render_profiles(x, u0, u_final, t_final, path):
    fig, ax = plt.subplots(figsize=(7.0, 3.2), constrained_layout=True)
    ax.plot(x, u0, lw=1.0, label="t = 0")
    ax.plot(x, u_final, lw=1.0, label=f"t = {t_final:g}")
    ax.set_xlabel("x")
    ax.set_ylabel("u")
    ax.legend(frameon=False)
    _save(fig, path)


def render_conserved(times, mass, l2, energy, path):
    fig, ax = plt.subplots(figsize=(6.0, 3.2), constrained_layout=True)
    for series, label in ((mass, "mass"), (l2, "L2 mass"), (energy, "energy")):
        ref = series[0]
        scale = abs(ref) if ref != 0 else 1.0
        ax.plot(times, np.abs(series - ref) / scale, lw=1.0, label=label)
    ax.set_yscale("log")
    ax.set_xlabel("t")
    ax.set_ylabel("relative drift")
    ax.legend(frameon=False)
    _save(fig, path)


def render_j_series(times, j_values, running_min, path):
    fig, ax = plt.subplots(figsize=(6.0, 3.2), constrained_layout=True)
    ax.loglog(times, j_values, "o-", ms=3, lw=1.0, label="J(t)")
    ax.loglog(times, running_min, lw=1.0, ls="--", label="running min")
    ax.set_xlabel("t")
    ax.set_ylabel("weighted functional")
    ax.legend(frameon=False)
    _save(fig, path)


def render_virial(times, x_moment, slope, m_half, path):
    fig, ax = plt.subplots(figsize=(6.0, 3.2), constrained_layout=True)
    ax.plot(times, x_moment, lw=1.2, label="first moment")
    fit = x_moment[0] + m_half * (times - times[0])
    ax.plot(times, fit, lw=1.0, ls="--", label=f"slope M/2 = {m_half:.4g}")
    ax.set_xlabel("t")
    ax.set_ylabel("integral of x u")
    ax.legend(frameon=False)
    _save(fig, path)


def render_ledgers(ledgers, path):
    """Bar chart of identity terms per audited time, residual annotated."""
    fig, axes = plt.subplots(
        1, max(1, len(ledgers)), figsize=(3.4 * max(1, len(ledgers)), 3.2),
        constrained_layout=True, squeeze=False,
    )
    for ax, led in zip(axes[0], ledgers):
        names = ["d/dt", "A1", "A2", "A3", "A4"]
        vals = [led.ddt_term, led.a1, led.a2, led.a3, led.a4]
        ax.bar(names, vals, color="steelblue")
        ax.axhline(0.0, color="k", lw=0.6)
        ax.set_title(f"{led.kind} t={led.t:.3g}\nresidual {led.closure_rel:.1e}",
                     fontsize=9)
    _save(fig, path)
