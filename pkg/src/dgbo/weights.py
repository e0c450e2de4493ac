"""Algebraic weight family, its Fourier transform, and the moving window law.

The weight derivative is phi_alpha'(x) = <x>^-(alpha+2) with <x> = sqrt(1+x^2),
and phi_alpha(x) is its antiderivative vanishing at -infinity.  This module
works in the 2*pi-exponent Fourier convention

    f_hat(xi) = integral exp(-2*pi*i*x*xi) f(x) dx,

in which the transform of phi_alpha' has the exact single-integral form

    phi_hat(xi) = sqrt(pi)/Gamma((alpha+2)/2)
                  * integral_0^inf exp(-s) s^((alpha-1)/2) exp(-pi^2 xi^2/s) ds.

Conversions to the solver's angular convention (k = 2*pi*xi) happen at the
call sites that need them.  alpha = 0 is admitted as the Benjamin-Ono
boundary case, where phi_0'(x) = 1/(1+x^2) and phi_hat(xi) = pi exp(-2*pi*|xi|).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy import integrate as _sciint
from scipy.special import gamma as _gamma

__all__ = [
    "QuadratureError",
    "WeightSpec",
    "WindowLaw",
    "phi_prime",
    "phi",
    "phi_on_grid",
    "phi_prime_hat",
    "total_mass",
    "moment_integral",
    "moment_closed_form",
    "window_lambda",
]


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to reach the requested accuracy."""


def _check_alpha(alpha: float) -> None:
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")


def phi_prime(x, alpha: float):
    """(1 + x^2)^(-(alpha+2)/2); even, positive, equals 1 at x = 0."""
    _check_alpha(alpha)
    return (1.0 + np.asarray(x, dtype=float) ** 2) ** (-0.5 * (alpha + 2.0))


def total_mass(alpha: float) -> float:
    """integral of phi_prime over the line: sqrt(pi)*Gamma((a+1)/2)/Gamma((a+2)/2).

    This is also the supremum of phi_alpha; the weight is bounded but the
    bound depends on alpha through this Beta integral.
    """
    _check_alpha(alpha)
    return math.sqrt(math.pi) * _gamma(0.5 * (alpha + 1)) / _gamma(0.5 * (alpha + 2))


def phi(x: float, alpha: float) -> float:
    """phi_alpha(x) = integral_{-inf}^x phi_prime(s) ds by adaptive quadrature."""
    _check_alpha(alpha)
    if not math.isfinite(x):
        raise ValueError(f"x must be finite, got {x}")
    # Integrate the decaying tail from the far side for better conditioning.
    if x <= 0:
        value, err = _sciint.quad(
            lambda s: phi_prime(s, alpha), -np.inf, x, epsabs=1e-12, epsrel=1e-12
        )
    else:
        tail, err = _sciint.quad(
            lambda s: phi_prime(s, alpha), x, np.inf, epsabs=1e-12, epsrel=1e-12
        )
        value = total_mass(alpha) - tail
    if err > 1e-10:
        raise QuadratureError(f"phi({x}, {alpha}) quadrature error estimate {err:.2e}")
    return float(value)


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(8)


def phi_on_grid(x: np.ndarray, alpha: float) -> np.ndarray:
    """phi_alpha at sorted sample points, vectorized.

    The tail up to x[0] uses adaptive quadrature; each cell [x_j, x_{j+1}]
    uses 8-point Gauss-Legendre, far below 1e-10 absolute error for the
    smooth integrand at solver spacings.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size < 2 or np.any(np.diff(x) <= 0):
        raise ValueError("x must be a strictly increasing 1-d array")
    base = phi(float(x[0]), alpha)
    mid = 0.5 * (x[:-1] + x[1:])
    half = 0.5 * np.diff(x)
    nodes = mid[:, None] + half[:, None] * _GL_NODES[None, :]
    cells = (phi_prime(nodes, alpha) @ _GL_WEIGHTS) * half
    out = np.empty_like(x)
    out[0] = base
    out[1:] = base + np.cumsum(cells)
    return out


def phi_prime_hat(xi: float, alpha: float) -> float:
    """Fourier transform of phi_alpha' at xi, in the exp(-2*pi*i*x*xi) convention.

    The substitution s = r^2 removes the integrable endpoint singularity
    s^((alpha-1)/2); the integral is split at the saddle r = sqrt(pi*|xi|)
    so the adaptive rule resolves the peak at large |xi|.
    """
    _check_alpha(alpha)
    axi = abs(float(xi))
    pref = math.sqrt(math.pi) / _gamma(0.5 * (alpha + 2))

    def integrand(r):
        return 2.0 * math.exp(-r * r) * r**alpha * math.exp(-((math.pi * axi / r) ** 2))

    r_star = math.sqrt(math.pi * axi)
    pieces = []
    if r_star > 0:
        pieces.append(_sciint.quad(integrand, 0.0, r_star, epsabs=0.0, epsrel=1e-10))
        pieces.append(_sciint.quad(integrand, r_star, np.inf, epsabs=0.0, epsrel=1e-10))
    else:
        pieces.append(_sciint.quad(integrand, 0.0, np.inf, epsabs=0.0, epsrel=1e-10))
    value = sum(p[0] for p in pieces)
    err = sum(p[1] for p in pieces)
    if value > 0 and err > 1e-8 * value:
        raise QuadratureError(f"phi_prime_hat({xi}, {alpha}) error estimate {err:.2e}")
    return pref * value


@lru_cache(maxsize=None)
def moment_integral(alpha: float) -> float:
    """integral over the line of |xi|^(alpha+1) * phi_prime_hat(xi) dxi.

    Evaluated by (nested) adaptive quadrature of the defining integrals; the
    closed form is available separately for verification.
    """
    _check_alpha(alpha)
    value, err = _sciint.quad(
        lambda xi: xi ** (alpha + 1.0) * phi_prime_hat(xi, alpha),
        0.0,
        np.inf,
        epsabs=0.0,
        epsrel=1e-9,
        limit=200,
    )
    if err > 1e-7 * value:
        raise QuadratureError(f"moment_integral({alpha}) error estimate {err:.2e}")
    return 2.0 * value


def moment_closed_form(alpha: float) -> float:
    """Gamma((2*alpha+3)/2) / pi^((2*alpha+3)/2)."""
    q = 0.5 * (2.0 * alpha + 3.0)
    return float(_gamma(q) / math.pi**q)


@dataclass(frozen=True)
class WeightSpec:
    """The weight phi_alpha'(x/scale): decay exponent alpha and dilation scale."""

    alpha: float
    scale: float = 1.0

    def __post_init__(self):
        _check_alpha(self.alpha)
        if not self.scale > 0:
            raise ValueError(f"scale must be positive, got {self.scale}")

    def prime_values(self, x: np.ndarray) -> np.ndarray:
        return phi_prime(np.asarray(x) / self.scale, self.alpha)

    def phi_values(self, x: np.ndarray) -> np.ndarray:
        return phi_on_grid(np.asarray(x) / self.scale, self.alpha)


@dataclass(frozen=True)
class WindowLaw:
    """Moving window lambda(t) = c*t^b/log(t) with b = 1 - a.

    The exponent pair is admissible only for a < 1/(alpha+2), equivalently
    b > (alpha+1)/(alpha+2); lambda is increasing for t >= t_min = e^(1/b).
    """

    a: float
    c: float
    alpha: float
    b: float = field(init=False)
    t_min: float = field(init=False)

    def __post_init__(self):
        _check_alpha(self.alpha)
        if not self.c > 0:
            raise ValueError(f"c must be positive, got {self.c}")
        upper = 1.0 / (2.0 + self.alpha)
        if not 0.0 <= self.a < upper:
            raise ValueError(
                f"window exponent a={self.a} must lie in [0, 1/(2+alpha)) = [0, {upper:.6g}); "
                f"equivalently b must exceed (alpha+1)/(alpha+2)"
            )
        object.__setattr__(self, "b", 1.0 - self.a)
        object.__setattr__(self, "t_min", math.exp(1.0 / self.b))

    @staticmethod
    def formula(t: float, b: float, c: float) -> float:
        """The bare window formula c*t^b/log(t), no admissibility applied."""
        return c * t**b / math.log(t)

    def lambda_at(self, t: float) -> float:
        if t < self.t_min:
            raise ValueError(f"t={t} below t_min={self.t_min:.6g}")
        return self.formula(t, self.b, self.c)

    def lambda_prime(self, t: float) -> float:
        """d lambda/dt = c*t^(b-1)*(b*log t - 1)/log^2 t."""
        if t < self.t_min:
            raise ValueError(f"t={t} below t_min={self.t_min:.6g}")
        lt = math.log(t)
        return self.c * t ** (self.b - 1.0) * (self.b * lt - 1.0) / lt**2


def window_lambda(t: float, law: WindowLaw) -> float:
    """lambda(t) for an admissible window law; rejects t < t_min."""
    return law.lambda_at(t)
