"""Commutator expansion operators P_n, R_n and their quantitative L2 bound.

For an operator order a = 2*mu + 1 >= 1 and a smooth weight f with decaying
derivative, the expansion writes the commutator -[H D^a; f] as a sum of local
terms plus an L2-bounded remainder:

    P_n(a) = a * sum_{0<=j<=n} c_{2j+1} (-1)^j 4^-j  D^(mu-j) f^(2j+1) D^(mu-j)
    R_n(a) = -[H D^a; f] - (P_n(a) - H P_n(a) H) / 2

with c_1 = 1 and c_{2j+1} = prod_{0<=k<j} (a^2 - (2k+1)^2) / (2j+1)!.

Validity requires 2n+1 <= a + 2*sigma <= 2n+3.  The remainder obeys

    ||D^sigma R_n(a) D^sigma h||_2 <= C * (1/2pi) * L1(|k|^(a+2s) * f_hat(k)) * ||h||_2

with C = 1 for a >= 2n+1; the L1 factor is the angular-convention transform
(equivalently the symmetric-convention norm times (2*pi)^(-1/2)).

Monotone weights such as phi_alpha(x/lambda) are not periodic, so their odd
derivatives must be supplied analytically; only products f*h with decaying h
ever pass through the transform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import weights as _weights
from .spectral import Grid, RealField, fractional_derivative, hilbert, inner

__all__ = [
    "CommutatorSpec",
    "coefficient",
    "apply_P_n",
    "apply_R_n",
    "commutator_hd_f",
    "phi_weight_spec",
    "gaussian_weight_spec",
    "remainder_bound_fft",
    "step2_A3_decomposition",
    "step2_A3_direct",
]


def coefficient(alpha: float, j: int) -> float:
    """Expansion coefficient c_{2j+1}."""
    if j < 0:
        raise ValueError("j must be a nonnegative integer")
    prod = 1.0
    for k in range(j):
        prod *= alpha**2 - (2 * k + 1) ** 2
    return prod / math.factorial(2 * j + 1)


@dataclass(frozen=True)
class CommutatorSpec:
    """Weight and parameters for one P_n/R_n operator family.

    odd_derivatives[j] holds samples of f^(2j+1); when omitted they are
    computed spectrally, which is only valid for weights decaying at the
    box ends.  symbol_l1 caches (1/2pi)*L1(|k|^(order+2*sigma)*f_hat) when an
    analytic value is known (the phi-weight factory fills it in).
    """

    order: float
    n: int
    sigma: float
    f: RealField
    odd_derivatives: tuple | None = None
    symbol_l1: float | None = None

    def __post_init__(self):
        if self.order < 1:
            raise ValueError(f"operator order must be >= 1, got {self.order}")
        if self.n < 0 or self.sigma < 0:
            raise ValueError("n and sigma must be nonnegative")
        lo, hi = 2 * self.n + 1, 2 * self.n + 3
        if not lo <= self.order + 2 * self.sigma <= hi:
            raise ValueError(
                f"admissibility requires {lo} <= order + 2*sigma <= {hi}, "
                f"got {self.order + 2 * self.sigma}"
            )
        if self.odd_derivatives is not None:
            object.__setattr__(
                self,
                "odd_derivatives",
                tuple(np.asarray(d, dtype=float) for d in self.odd_derivatives),
            )

    @property
    def mu(self) -> float:
        return 0.5 * (self.order - 1.0)

    def odd_derivative(self, j: int) -> np.ndarray:
        """Samples of f^(2j+1)."""
        if self.odd_derivatives is not None:
            if j >= len(self.odd_derivatives):
                raise ValueError(f"derivative order 2*{j}+1 not supplied")
            return self.odd_derivatives[j]
        k = self.f.grid.wavenumbers
        mult = (1j * k) ** (2 * j + 1)
        mult[self.f.grid.n_points // 2] = 0.0
        return np.fft.ifft(np.fft.fft(self.f.samples) * mult).real


def apply_P_n(spec: CommutatorSpec, h: RealField) -> RealField:
    """P_n(order) h = order * sum_j c_{2j+1} (-1)^j 4^-j D^(mu-j)(f^(2j+1) * D^(mu-j) h)."""
    if h.grid != spec.f.grid:
        raise ValueError("h and the weight live on different grids")
    if spec.mu - spec.n < 0:
        raise ValueError(
            f"mu - j = {spec.mu - spec.n} < 0 at j = {spec.n}: negative-order D not supported"
        )
    acc = np.zeros(h.grid.n_points)
    for j in range(spec.n + 1):
        s = spec.mu - j
        dj = fractional_derivative(h, s)
        mid = RealField(h.grid, spec.odd_derivative(j) * dj.samples)
        term = fractional_derivative(mid, s)
        acc += spec.order * coefficient(spec.order, j) * (-0.25) ** j * term.samples
    return RealField(h.grid, acc)


def commutator_hd_f(spec: CommutatorSpec, h: RealField) -> RealField:
    """[H D^order; f] h = H D^order (f*h) - f * H D^order h.

    Only the decaying product f*h is transformed, never f alone, so monotone
    weights are safe as long as h vanishes near the box ends.
    """
    if h.grid != spec.f.grid:
        raise ValueError("h and the weight live on different grids")
    fh = RealField(h.grid, spec.f.samples * h.samples)
    left = hilbert(fractional_derivative(fh, spec.order))
    right = spec.f.samples * hilbert(fractional_derivative(h, spec.order)).samples
    return RealField(h.grid, left.samples - right)


def apply_R_n(spec: CommutatorSpec, h: RealField) -> RealField:
    """Remainder R_n(order) h = -[H D^order; f] h - (P_n h - H P_n H h)/2."""
    comm = commutator_hd_f(spec, h)
    p_h = apply_P_n(spec, h)
    hph = hilbert(apply_P_n(spec, hilbert(h)))
    out = -comm.samples - 0.5 * (p_h.samples - hph.samples)
    return RealField(h.grid, out)


def phi_weight_spec(
    grid: Grid, alpha: float, scale: float, n: int = 0, sigma: float = 0.0
) -> CommutatorSpec:
    """Spec for f = phi_alpha(x/scale) at operator order alpha + 2.

    f' = phi_alpha'(x/scale)/scale is supplied analytically (f itself has a
    seam jump on the torus and must never be differentiated spectrally).  The
    L2-bound constant is exact: with Jacobian bookkeeping the angular L1 norm
    of |k|^(alpha+2) f_hat equals (2*pi)^(alpha+2) * scale^-(alpha+2) times
    the moment integral of the unit-scale weight, computed by quadrature.
    """
    if n != 0:
        raise ValueError("analytic odd derivatives supplied for n = 0 only")
    x = grid.nodes
    f = RealField(grid, _weights.phi_on_grid(x / scale, alpha))
    fp = _weights.phi_prime(x / scale, alpha) / scale
    order = alpha + 2.0
    moment = _weights.moment_integral(alpha)
    bound = (2.0 * math.pi) ** (order - 1.0) * scale ** (-order) * moment
    return CommutatorSpec(
        order=order, n=n, sigma=sigma, f=f, odd_derivatives=(fp,), symbol_l1=bound
    )


def gaussian_weight_spec(
    grid: Grid, order: float, n: int, width: float, sigma: float = 0.0
) -> CommutatorSpec:
    """Spec with a periodized-Gaussian weight; derivatives taken spectrally."""
    x = grid.nodes
    f = RealField(grid, np.exp(-((x / width) ** 2)))
    return CommutatorSpec(order=order, n=n, sigma=sigma, f=f)


def remainder_bound_fft(spec: CommutatorSpec) -> float:
    """(1/2pi) * L1 norm of |k|^(order+2*sigma) * f_hat(k), trapezoid in k.

    Valid for weights decaying at the box ends, where the discrete transform
    approximates the continuum one spectrally.
    """
    grid = spec.f.grid
    k = grid.wavenumbers
    f_hat = grid.spacing * np.fft.fft(spec.f.samples)
    dk = 2.0 * math.pi / grid.length
    power = spec.order + 2.0 * spec.sigma
    return float(
        (np.abs(k) ** power * np.abs(f_hat)).sum() * dk / (2.0 * math.pi)
    )


def step2_A3_decomposition(
    u: RealField, weight: _weights.WeightSpec, alpha: float, prefactor: float
):
    """Split prefactor * <u, -[H D^(a+2); phi_a(./scale)] u> / 2 into its three parts.

    Returns (A31, A32, A33) with

        A31 = prefactor/2 * <u, R_0(alpha+2) u>
        A32 = prefactor*(alpha+2)/(4*scale) * integral (D^((a+1)/2) u)^2 phi'(x/scale)
        A33 = the same with H D^((a+1)/2) u,

    so A32, A33 >= 0 and the three sum to the direct commutator form.
    """
    if weight.alpha != alpha:
        raise ValueError("weight exponent must match the equation alpha")
    spec = phi_weight_spec(u.grid, alpha, weight.scale, n=0)
    a31 = 0.5 * prefactor * inner(u, apply_R_n(spec, u))

    mu = 0.5 * (alpha + 1.0)
    du = fractional_derivative(u, mu)
    hdu = hilbert(du)
    wp = weight.prime_values(u.grid.nodes)
    h = u.grid.spacing
    coef = prefactor * (alpha + 2.0) / (4.0 * weight.scale)
    a32 = coef * float((du.samples**2 * wp).sum() * h)
    a33 = coef * float((hdu.samples**2 * wp).sum() * h)
    return a31, a32, a33


def step2_A3_direct(
    u: RealField, weight: _weights.WeightSpec, alpha: float, prefactor: float
) -> float:
    """-prefactor/2 * <u, [H D^(alpha+2); phi_alpha(./scale)] u>, evaluated directly."""
    spec = phi_weight_spec(u.grid, alpha, weight.scale, n=0)
    return -0.5 * prefactor * inner(u, commutator_hd_f(spec, u))
