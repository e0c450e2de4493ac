"""Pseudospectral laboratory for the dispersion-generalized Benjamin-Ono
equation: simulation, solitary waves, and quantitative verification of the
weighted-decay and virial machinery."""

from .spectral import (
    Grid,
    RealField,
    SpectralField,
    transform,
    inverse_transform,
    fractional_derivative,
    hilbert,
    derivative,
    dealias,
)
from .weights import WeightSpec, WindowLaw, phi, phi_prime, phi_prime_hat, moment_integral
from .commutators import CommutatorSpec, coefficient, apply_P_n, apply_R_n
from .ground_state import SolitaryWave, solve_petviashvili, profile_equation_residual
from .evolution import EquationParams, Trajectory, evolve, conserved, l1_monitor
from .functionals import (
    weighted_J,
    decay_report,
    step1_ledger,
    step2_ledger,
    virial,
    sample_times,
)

__version__ = "0.1.0"

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
    "WeightSpec",
    "WindowLaw",
    "phi",
    "phi_prime",
    "phi_prime_hat",
    "moment_integral",
    "CommutatorSpec",
    "coefficient",
    "apply_P_n",
    "apply_R_n",
    "SolitaryWave",
    "solve_petviashvili",
    "profile_equation_residual",
    "EquationParams",
    "Trajectory",
    "evolve",
    "conserved",
    "l1_monitor",
    "weighted_J",
    "decay_report",
    "step1_ledger",
    "step2_ledger",
    "virial",
    "sample_times",
    "__version__",
]
