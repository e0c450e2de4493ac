"""Weighted decay functional, identity ledgers, virial check, and inequality
diagnostics.

The central object is

    J(t) = integral ( u^2 + (D^((a+1)/2) u)^2 + (H D^((a+1)/2) u)^2 )
           * phi_a'(x / lambda(t)) dx

evaluated along a trajectory with the moving window lambda(t) = c t^b / log t.
Two exact continuum identities are audited numerically as "ledgers" whose
terms must sum to zero:

  Step 1 (multiply the equation by g(t) phi(x/lambda), g = t^-a log^-2 t):

    d/dt[ g int phi u ] - int g' phi u + g (lam'/lam) int (x/lam) phi' u
      + (g/lam) int D^(a+1)[phi'(x/lam)] u - (g/(2 lam)) int phi' u^2 = 0

  Step 2 (multiply by g phi u; the quadratic-in-u weighted identity):

    (1/2) d/dt[ g int phi u^2 ] - (1/2) int g' phi u^2
      + (g/2)(lam'/lam) int (x/lam) phi' u^2
      + A31 + A32 + A33 - (g/(3 lam)) int phi' u^3 = 0

  where A31 + A32 + A33 = -(g/2) <u, [H D^(a+2); phi(./lam)] u> is split by
  the n = 0 commutator expansion; A32 and A33 are nonnegative.

Time derivatives use 5-point centered differences over uniformly spaced
trajectory samples, cross-checked against the 3-point value (Richardson
flag).  The first-moment (virial) identity d/dt int x u = (1/2) int u^2 is
checked the same way; it forces linear growth of int x u at rate M/2, which
rules out localized time-periodic solutions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .commutators import step2_A3_decomposition
from .spectral import (
    RealField,
    Grid,
    fractional_derivative,
    hilbert,
    lp_norm,
    sobolev_norm,
)
from .weights import WindowLaw, WeightSpec, phi_on_grid, phi_prime
from .evolution import Trajectory

__all__ = [
    "DecayReport",
    "IdentityLedger",
    "VirialReport",
    "weighted_J",
    "decay_report",
    "step1_ledger",
    "step2_ledger",
    "virial",
    "sample_times",
    "spanning_sample_times",
    "ledger_cluster",
    "gn_check",
    "leibniz_check",
    "cubic_weight_check",
    "linf_embedding_constant",
]


# ---------------------------------------------------------------------------
# weighted functional


def _integrand_triple(u: RealField, alpha: float):
    mu = 0.5 * (alpha + 1.0)
    du = fractional_derivative(u, mu)
    hdu = hilbert(du)
    return u.samples**2 + du.samples**2 + hdu.samples**2


def weighted_J(u: RealField, t: float, law: WindowLaw, alpha: float) -> float:
    """The three-term integrand against phi'(x/lambda(t)), grid quadrature."""
    lam = law.lambda_at(t)
    w = phi_prime(u.grid.nodes / lam, alpha)
    return float((_integrand_triple(u, alpha) * w).sum() * u.grid.spacing)


@dataclass(frozen=True)
class DecayReport:
    """J along a sampling schedule plus its running minimum (liminf proxy)."""

    times: np.ndarray
    j_values: np.ndarray
    running_min: np.ndarray
    law: WindowLaw
    seam_fraction_max: float

    def __post_init__(self):
        if np.any(self.j_values < 0):
            raise ValueError("J must be nonnegative")


def decay_report(traj: Trajectory, law: WindowLaw, alpha: float) -> DecayReport:
    """Evaluate J at every recorded sample past the window's t_min.

    seam_fraction_max records the largest share of the weighted integrand
    carried by the outer 1% of the box, a box-truncation audit.
    """
    sel = traj.times >= law.t_min
    times = traj.times[sel]
    if times.size == 0:
        raise ValueError("no trajectory samples beyond the window law's t_min")
    grid = traj.grid
    edge = max(1, grid.n_points // 100)
    outer = np.zeros(grid.n_points, dtype=bool)
    outer[:edge] = True
    outer[-edge:] = True
    j_vals, seam_max = [], 0.0
    for t in times:
        u = traj.state_at(t)
        w = phi_prime(grid.nodes / law.lambda_at(t), alpha)
        contrib = _integrand_triple(u, alpha) * w
        total = float(contrib.sum() * grid.spacing)
        j_vals.append(total)
        if total > 0:
            seam_max = max(seam_max, float(contrib[outer].sum() * grid.spacing) / total)
    j_vals = np.asarray(j_vals)
    return DecayReport(times, j_vals, np.minimum.accumulate(j_vals), law, seam_max)


# ---------------------------------------------------------------------------
# identity ledgers


@dataclass(frozen=True)
class IdentityLedger:
    """One evaluation of an exact identity: terms and how far they are from 0.

    a3_split is (A31, A32, A33) for the quadratic identity, None otherwise;
    there a3 is their sum.  fd_suspect flags closures whose residual an
    estimated finite-difference error could dominate.  a3_weight_moved
    (linear identity only) re-evaluates A3 with the multiplier moved onto
    the weight; its gap from a3 measures the box-truncation error of that
    rewrite (the weight's seam jump pairs with the dispersion tail of u).
    """

    kind: str
    t: float
    ddt_term: float
    a1: float
    a2: float
    a3: float
    a4: float
    closure_residual: float
    closure_rel: float
    fd_gap: float
    fd_suspect: bool
    a3_split: tuple | None = None
    a3_weight_moved: float | None = None


def _g(t: float, a: float) -> float:
    return t ** (-a) / math.log(t) ** 2


def _g_prime(t: float, a: float) -> float:
    lt = math.log(t)
    return -(a * lt + 2.0) / (t ** (a + 1.0) * lt**3)


def _fd_window(traj: Trajectory, t: float):
    """Indices i-2..i+2 around t with uniform spacing; returns (indices, delta)."""
    i = traj.index_of(t)
    if i < 2 or i > traj.times.size - 3:
        raise ValueError(f"t={t} needs two recorded samples on each side")
    idx = np.arange(i - 2, i + 3)
    steps = np.diff(traj.times[idx])
    delta = float(steps.mean())
    if np.any(np.abs(steps - delta) > 1e-9 * max(delta, 1.0)):
        raise ValueError("samples around t are not uniformly spaced")
    return idx, delta


def _fd5_and_gap(values: np.ndarray, delta: float):
    d5 = (values[0] - 8.0 * values[1] + 8.0 * values[3] - values[4]) / (12.0 * delta)
    d3 = (values[3] - values[1]) / (2.0 * delta)
    return float(d5), float(abs(d5 - d3))


def _closure(ddt, terms, fd_gap, delta):
    total = ddt + sum(terms)
    scale = max(abs(ddt), *(abs(v) for v in terms))
    rel = abs(total) / scale if scale > 0 else 0.0
    # leading 5-point error is roughly delta^2 shy of the 5-vs-3-point gap
    fd_err_estimate = 0.2 * delta**2 * fd_gap
    suspect = rel > 1e-7 and fd_err_estimate > 0.5 * abs(total)
    return abs(total), rel, suspect


def step1_ledger(
    traj: Trajectory, law: WindowLaw, alpha: float, t: float
) -> IdentityLedger:
    """Audit the linear-in-u weighted identity at an interior sample time.

    A3 multiplies the dispersion term by the weight pointwise, exactly as the
    identity is written; the equivalent form with D^(alpha+1) moved onto the
    weight derivative is reported alongside.  The two differ by the weight's
    seam jump paired with the algebraic dispersion tail of u at the box ends,
    an O(L^-(alpha+2)) truncation effect that would otherwise dominate the
    closure residual.
    """
    idx, delta = _fd_window(traj, t)
    grid = traj.grid
    x = grid.nodes
    h = grid.spacing

    g_vals = np.empty(5)
    for j, i in enumerate(idx):
        tj = float(traj.times[i])
        phi_j = phi_on_grid(x / law.lambda_at(tj), alpha)
        g_vals[j] = _g(tj, law.a) * (phi_j * traj.states[i].samples).sum() * h
    ddt, fd_gap = _fd5_and_gap(g_vals, delta)

    u = traj.state_at(t).samples
    lam = law.lambda_at(t)
    g = _g(t, law.a)
    phi_vals = phi_on_grid(x / lam, alpha)
    wp = phi_prime(x / lam, alpha)
    k = grid.wavenumbers

    a1 = -_g_prime(t, law.a) * (phi_vals * u).sum() * h
    a2 = (law.lambda_prime(t) / lam) * g * ((x / lam) * wp * u).sum() * h
    mult = np.abs(k) ** (alpha + 1.0) * (1j * k)
    mult[grid.n_points // 2] = 0.0
    disp = np.fft.ifft(mult * np.fft.fft(u)).real
    a3 = -g * (phi_vals * disp).sum() * h
    dwp = np.fft.ifft(np.abs(k) ** (alpha + 1.0) * np.fft.fft(wp)).real
    a3_moved = (g / lam) * (dwp * u).sum() * h
    # the transport source vanishes when the trajectory was run linear-only
    if traj.params.nonlinear:
        a4 = -(g / (2.0 * lam)) * (wp * u**2).sum() * h
    else:
        a4 = 0.0

    residual, rel, suspect = _closure(ddt, (a1, a2, a3, a4), fd_gap, delta)
    return IdentityLedger(
        "step1", t, ddt, float(a1), float(a2), float(a3), float(a4),
        residual, rel, fd_gap, suspect, a3_weight_moved=float(a3_moved),
    )


def step2_ledger(
    traj: Trajectory, law: WindowLaw, alpha: float, t: float
) -> IdentityLedger:
    """Audit the quadratic weighted identity, with the commutator split of A3."""
    idx, delta = _fd_window(traj, t)
    grid = traj.grid
    x = grid.nodes
    h = grid.spacing

    g_vals = np.empty(5)
    for j, i in enumerate(idx):
        tj = float(traj.times[i])
        phi_j = phi_on_grid(x / law.lambda_at(tj), alpha)
        g_vals[j] = _g(tj, law.a) * (phi_j * traj.states[i].samples ** 2).sum() * h
    d_raw, fd_gap = _fd5_and_gap(g_vals, delta)
    ddt = 0.5 * d_raw
    fd_gap *= 0.5

    u_field = traj.state_at(t)
    u = u_field.samples
    lam = law.lambda_at(t)
    g = _g(t, law.a)
    phi_vals = phi_on_grid(x / lam, alpha)
    wp = phi_prime(x / lam, alpha)

    a1 = -0.5 * _g_prime(t, law.a) * (phi_vals * u**2).sum() * h
    a2 = 0.5 * g * (law.lambda_prime(t) / lam) * ((x / lam) * wp * u**2).sum() * h
    weight = WeightSpec(alpha, lam)
    a31, a32, a33 = step2_A3_decomposition(u_field, weight, alpha, g)
    a3 = a31 + a32 + a33
    if traj.params.nonlinear:
        a4 = -(g / (3.0 * lam)) * (wp * u**3).sum() * h
    else:
        a4 = 0.0

    residual, rel, suspect = _closure(ddt, (a1, a2, a3, a4), fd_gap, delta)
    return IdentityLedger(
        "step2", t, ddt, float(a1), float(a2), float(a3), float(a4),
        residual, rel, fd_gap, suspect, a3_split=(a31, a32, a33),
    )


def ledger_cluster(t: float, delta: float) -> list:
    """The five uniformly spaced sample times a ledger at t requires."""
    return [t + j * delta for j in (-2, -1, 0, 1, 2)]


# ---------------------------------------------------------------------------
# virial identity


@dataclass(frozen=True)
class VirialReport:
    times: np.ndarray
    x_moment: np.ndarray
    slope: float
    m_half: float
    max_rel_mismatch: float


def virial(traj: Trajectory, edge_tolerance: float = 1e-6) -> VirialReport:
    """d/dt int x u versus (1/2) int u^2 along a localized trajectory.

    The first moment is box-sensitive, so states must vanish near the ends
    (max |u| <= edge_tolerance over the outer 2% on both sides); otherwise the
    check refuses.  The default threshold allows for the algebraic tails the
    nonlocal dispersion attaches to any mass-carrying state (about
    mass/|x|^(alpha+2), so a round-off-level cutoff is unattainable on a
    desk-scale box).  Reports the worst pointwise mismatch over interior
    samples and the fitted linear growth rate, to be compared with M/2.
    """
    grid = traj.grid
    n = grid.n_points
    edge = max(1, n // 50)
    for t, state in zip(traj.times, traj.states):
        tails = np.abs(np.concatenate([state.samples[:edge], state.samples[-edge:]]))
        if tails.max() > edge_tolerance:
            raise ValueError(
                f"state at t={t:.6g} has |u|={tails.max():.2e} near the box ends; "
                "the first moment is ill-defined on the torus"
            )
    if traj.times.size < 5:
        raise ValueError("need at least 5 samples")
    steps = np.diff(traj.times)
    delta = float(steps.mean())
    if np.any(np.abs(steps - delta) > 1e-9 * max(delta, 1.0)):
        raise ValueError("virial check expects uniformly spaced samples")

    x = grid.nodes
    h = grid.spacing
    xmom = np.array([(x * s.samples).sum() * h for s in traj.states])
    m_vals = np.array([c.l2 for c in traj.conserved])

    worst = 0.0
    for i in range(2, traj.times.size - 2):
        d5 = (xmom[i - 2] - 8 * xmom[i - 1] + 8 * xmom[i + 1] - xmom[i + 2]) / (
            12.0 * delta
        )
        target = 0.5 * m_vals[i]
        if target == 0.0:
            worst = max(worst, abs(d5))  # zero solution: both sides vanish
        else:
            worst = max(worst, abs(d5 - target) / abs(target))
    slope = float(np.polyfit(traj.times, xmom, 1)[0])
    return VirialReport(traj.times, xmom, slope, float(0.5 * m_vals.mean()), worst)


# ---------------------------------------------------------------------------
# sampling schedule


def sample_times(
    epsilon: float, alpha: float, count: int, t_min: float = math.e
) -> np.ndarray:
    """t_n = (log n)^(1/(epsilon*(alpha+2))) for consecutive integers n.

    The starting index is the smallest n >= 2 with t_n >= t_min.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if count < 2:
        raise ValueError("count must be at least 2")
    q = epsilon * (alpha + 2.0)
    n0 = max(2, int(math.ceil(math.exp(t_min**q))))
    n = np.arange(n0, n0 + count, dtype=float)
    return np.log(n) ** (1.0 / q)


def spanning_sample_times(
    epsilon: float, alpha: float, count: int, t_start: float, t_end: float
) -> np.ndarray:
    """count members of the same sequence, subsampled to span [t_start, t_end].

    Consecutive indices advance only logarithmically, so desk-scale time
    ranges require geometrically spaced indices n_k = exp(t_k^q); each time is
    snapped to the nearest integer index whenever that is representable
    (beyond that the snap is below floating-point resolution).
    """
    if not 0 < t_start < t_end:
        raise ValueError("need 0 < t_start < t_end")
    q = epsilon * (alpha + 2.0)
    t_targets = np.geomspace(t_start, t_end, count)
    out = []
    for t in t_targets:
        log_n = t**q
        if log_n <= 700.0:
            n = max(2.0, round(math.exp(log_n)))
            out.append(math.log(n) ** (1.0 / q))
        else:
            out.append(float(t))
    return np.array(out)


# ---------------------------------------------------------------------------
# inequality diagnostics


def gn_check(u: RealField, p: float, alpha: float) -> float:
    """Interpolation-inequality ratio ||u||_p / (||u||_2^(1-th) ||D^mu u||_2^th),
    th = (p-2)/((alpha+1) p), mu = (1+alpha)/2."""
    if not 2.0 <= p <= 16.0:
        raise ValueError(f"p must lie in [2, 16], got {p}")
    if lp_norm(u, np.inf) == 0.0:
        raise ValueError("zero field")
    theta = (p - 2.0) / ((alpha + 1.0) * p)
    l2 = lp_norm(u, 2)
    dnorm = lp_norm(fractional_derivative(u, 0.5 * (1.0 + alpha)), 2)
    if dnorm == 0.0 and p > 2.0:
        raise ValueError("zero derivative norm with p > 2")
    return float(lp_norm(u, p) / (l2 ** (1.0 - theta) * dnorm**theta))


def leibniz_check(f: RealField, g: RealField, alpha: float) -> float:
    """Fractional-product-rule ratio
    ||D^mu(fg) - g D^mu f||_2 / (||f||_4 ||D^mu g||_4), mu = (alpha+1)/2."""
    if f.grid != g.grid:
        raise ValueError("fields live on different grids")
    mu = 0.5 * (alpha + 1.0)
    den = lp_norm(f, 4) * lp_norm(fractional_derivative(g, mu), 4)
    if den == 0.0:
        raise ValueError("degenerate denominator (constant second factor?)")
    fg = RealField(f.grid, f.samples * g.samples)
    num_field = (
        fractional_derivative(fg, mu).samples
        - g.samples * fractional_derivative(f, mu).samples
    )
    num = float(np.sqrt((num_field**2).sum() * f.grid.spacing))
    return num / den


def cubic_weight_check(
    u: RealField, shift: float, alpha: float, h_half_norm: float
):
    """Weighted-cubic against weighted-quadratic mass for a shifted field.

    The input is rescaled to the declared H^((alpha+1)/2) size so that the
    returned ratio integral |u|^3 phi' / integral u^2 phi' is comparable
    across an ensemble (it scales linearly in the field amplitude).  The
    shift is rounded to the nearest grid offset.  Returns (lhs, ratio).
    """
    if lp_norm(u, np.inf) == 0.0:
        raise ValueError("zero field")
    if h_half_norm <= 0:
        raise ValueError("h_half_norm must be positive")
    mu = 0.5 * (alpha + 1.0)
    scale = h_half_norm / sobolev_norm(u, mu)
    grid = u.grid
    offset = int(round(shift / grid.spacing))
    shifted = np.roll(u.samples * scale, offset)
    w = phi_prime(grid.nodes, alpha)
    h = grid.spacing
    lhs = float((np.abs(shifted) ** 3 * w).sum() * h)
    quad = float((shifted**2 * w).sum() * h)
    return lhs, lhs / quad


def linf_embedding_constant(grid: Grid, s: float) -> float:
    """Discrete constant C with ||u||_inf <= C * sqrt(||u||_2^2 + ||D^s u||_2^2).

    From |u| <= (1/N) sum |u_hat| and Cauchy-Schwarz against (1 + |k|^(2s)):
    C = sqrt( sum_m (1+|k_m|^(2s))^-1 / L ).  Supplies an independent upper
    bound for the cubic-weight ratio, since |u|^3 <= ||u||_inf u^2 pointwise.
    """
    k = grid.wavenumbers
    s_sum = float((1.0 / (1.0 + np.abs(k) ** (2.0 * s))).sum())
    return math.sqrt(s_sum / grid.length)
