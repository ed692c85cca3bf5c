"""Capacity-volume analysis on rotationally symmetric manifolds.

Computes relative and global p-capacities of ball condensers, sharp
capacity-volume bounds with their monotone proof functionals, weak Lebesgue
imbeddings with extremal families, and principal p-frequency estimates, each
cross-checked against independent discrete-minimization oracles.
"""

from .capacity import (Condenser, Exponent, ball_capacity, beta_critical,
                       capacitary_potential, exp_capacity_functional,
                       global_capacity)
from .errors import (AccuracyError, CapaxError, ConvergenceError,
                     ConvexityError, DimensionError, DivergenceError,
                     DivergentCondenserError, DivergentTailError, DomainError,
                     HorizonError, HypothesisError, ProfileError, RegimeError)
from .geometry import (WarpProfile, ball_volume, inverse_volume, make_profile,
                       profile_from_json, sphere_area, unit_ball_volume,
                       warp_eval)
from .quadrature import QuadratureSettings

__version__ = "0.1.0"

__all__ = [
    "AccuracyError", "CapaxError", "Condenser", "ConvergenceError",
    "ConvexityError", "DimensionError", "DivergenceError",
    "DivergentCondenserError", "DivergentTailError", "DomainError",
    "Exponent", "HorizonError", "HypothesisError", "ProfileError",
    "QuadratureSettings", "RegimeError", "WarpProfile", "ball_capacity",
    "ball_volume", "beta_critical", "capacitary_potential",
    "exp_capacity_functional", "global_capacity", "inverse_volume",
    "make_profile", "profile_from_json", "sphere_area", "unit_ball_volume",
    "warp_eval",
]
