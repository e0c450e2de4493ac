"""Periodic Fourier discretization and multiplier operators.

The x-domain is a truncation of the real line to [-L/2, L/2) with periodic
wrap.  All operators act through the discrete Fourier transform with angular
wavenumbers k_m = 2*pi*m/L, m = -N/2 .. N/2-1 (numpy fft ordering).  The
multiplier conventions:

    d/dx            -> i*k
    Hilbert H       -> -i*sign(k)
    D^s = |d/dx|^s  -> |k|^s           (zero mode killed for s > 0)

so that D = H d/dx holds identically.  Odd multipliers (d/dx, H) annihilate
the unpaired Nyquist mode, which keeps their output exactly real.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Grid",
    "RealField",
    "SpectralField",
    "transform",
    "inverse_transform",
    "fractional_derivative",
    "hilbert",
    "derivative",
    "dealias",
    "dealias_mask",
    "integrate",
    "inner",
    "lp_norm",
    "sobolev_norm",
    "translate",
    "random_band_limited",
]


@dataclass(frozen=True)
class Grid:
    """Uniform periodic grid: n_points samples of a box of given length."""

    n_points: int
    length: float

    def __post_init__(self):
        if self.n_points % 2 != 0 or self.n_points < 16:
            raise ValueError(f"n_points must be even and >= 16, got {self.n_points}")
        if not (self.length > 0 and np.isfinite(self.length)):
            raise ValueError(f"length must be a positive real, got {self.length}")

    @property
    def spacing(self) -> float:
        return self.length / self.n_points

    @property
    def nodes(self) -> np.ndarray:
        """x_j = -L/2 + j*h, j = 0..N-1."""
        return -0.5 * self.length + self.spacing * np.arange(self.n_points)

    @property
    def wavenumbers(self) -> np.ndarray:
        """Angular wavenumbers 2*pi*m/L in fft ordering."""
        return 2.0 * np.pi * np.fft.fftfreq(self.n_points, d=self.spacing)

    @property
    def mode_numbers(self) -> np.ndarray:
        """Integer mode indices m in fft ordering."""
        return np.rint(np.fft.fftfreq(self.n_points) * self.n_points).astype(int)


def _frozen_array(a, dtype) -> np.ndarray:
    out = np.array(a, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class RealField:
    """A real function sampled on a periodic grid."""

    grid: Grid
    samples: np.ndarray

    def __post_init__(self):
        samples = _frozen_array(self.samples, float)
        if samples.shape != (self.grid.n_points,):
            raise ValueError(
                f"expected {self.grid.n_points} samples, got shape {samples.shape}"
            )
        if not np.all(np.isfinite(samples)):
            raise ValueError("samples must be finite")
        object.__setattr__(self, "samples", samples)


@dataclass(frozen=True)
class SpectralField:
    """Discrete Fourier coefficients of a field, fft ordering, fft scaling.

    For a field representing a real function the coefficients are Hermitian:
    c[-m] = conj(c[m]).
    """

    grid: Grid
    coefficients: np.ndarray

    def __post_init__(self):
        coeffs = _frozen_array(self.coefficients, complex)
        if coeffs.shape != (self.grid.n_points,):
            raise ValueError(
                f"expected {self.grid.n_points} coefficients, got shape {coeffs.shape}"
            )
        object.__setattr__(self, "coefficients", coeffs)


def transform(u: RealField) -> SpectralField:
    """Forward DFT (unnormalized, numpy convention)."""
    return SpectralField(u.grid, np.fft.fft(u.samples))


def inverse_transform(u_hat: SpectralField) -> RealField:
    """Inverse DFT; the imaginary residue of Hermitian input is discarded."""
    return RealField(u_hat.grid, np.fft.ifft(u_hat.coefficients).real)


def _apply_multiplier(u: RealField, multiplier: np.ndarray) -> RealField:
    coeffs = np.fft.fft(u.samples) * multiplier
    return RealField(u.grid, np.fft.ifft(coeffs).real)


def fractional_derivative(u: RealField, s: float) -> RealField:
    """D^s u, spectral multiplier |k|^s.

    The zero mode is annihilated for s > 0 (the continuum symbol vanishes at
    k = 0) and preserved for s = 0, where D^0 is the identity.
    """
    if s < 0:
        raise ValueError(f"negative order s={s} not supported")
    if s == 0:
        return u
    return _apply_multiplier(u, np.abs(u.grid.wavenumbers) ** s)


def hilbert(u: RealField) -> RealField:
    """Hilbert transform, multiplier -i*sign(k); zero and Nyquist modes -> 0."""
    mult = -1j * np.sign(u.grid.wavenumbers)
    mult[u.grid.n_points // 2] = 0.0
    return _apply_multiplier(u, mult)


def derivative(u: RealField) -> RealField:
    """d/dx, multiplier i*k; the Nyquist mode -> 0."""
    mult = 1j * u.grid.wavenumbers
    mult[u.grid.n_points // 2] = 0.0
    return _apply_multiplier(u, mult)


def dealias_mask(grid: Grid) -> np.ndarray:
    """Boolean 2/3-rule mask keeping modes |m| <= N/3."""
    return np.abs(grid.mode_numbers) <= grid.n_points // 3


def dealias(u_hat: SpectralField) -> SpectralField:
    """Zero all coefficients with |m| > N/3 (2/3 rule for quadratic terms)."""
    return SpectralField(u_hat.grid, u_hat.coefficients * dealias_mask(u_hat.grid))


def integrate(u: RealField) -> float:
    """Periodic rectangle quadrature, spectrally accurate for smooth data."""
    return float(u.samples.sum() * u.grid.spacing)


def inner(u: RealField, v: RealField) -> float:
    """L2 inner product on the box."""
    if u.grid != v.grid:
        raise ValueError("fields live on different grids")
    return float((u.samples * v.samples).sum() * u.grid.spacing)


def lp_norm(u: RealField, p: float) -> float:
    """Grid L^p norm; p = inf gives the max norm."""
    if np.isinf(p):
        return float(np.abs(u.samples).max())
    return float(((np.abs(u.samples) ** p).sum() * u.grid.spacing) ** (1.0 / p))


def sobolev_norm(u: RealField, s: float) -> float:
    """(||u||_2^2 + ||D^s u||_2^2)^(1/2)."""
    ds = fractional_derivative(u, s)
    return float(np.sqrt(inner(u, u) + inner(ds, ds)))


def translate(u: RealField, shift: float) -> RealField:
    """u(x - shift) by spectral phase shift; exact for band-limited fields."""
    k = u.grid.wavenumbers
    phase = np.exp(-1j * k * shift)
    phase[u.grid.n_points // 2] = 0.0  # unpaired Nyquist cannot be phase-shifted
    return _apply_multiplier(u, phase)


def random_band_limited(
    grid: Grid,
    max_mode: int,
    rng: np.random.Generator,
    zero_mean: bool = True,
) -> RealField:
    """Random real field with spectral support in 1 <= |m| <= max_mode.

    Coefficients are iid complex Gaussians, so the draw defines the same
    continuum function independently of n_points (used for refinement tests).
    """
    if not 1 <= max_mode <= grid.n_points // 3:
        raise ValueError("max_mode must lie in [1, N/3]")
    half = np.zeros(grid.n_points // 2 + 1, dtype=complex)
    re = rng.standard_normal(max_mode)
    im = rng.standard_normal(max_mode)
    half[1 : max_mode + 1] = re + 1j * im
    if not zero_mean:
        half[0] = rng.standard_normal()
    samples = np.fft.irfft(half) * grid.n_points
    return RealField(grid, samples)
