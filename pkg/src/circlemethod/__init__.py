"""Numerical companion to the circle-method treatment of N = p1 + p2 + 2 p3."""

__version__ = "0.1.0"

from .arith import euler_phi, factorize, mobius, ramanujan_sum, ramanujan_sum_bruteforce
from .errors import (
    AliasingError,
    CapacityError,
    CircleMethodError,
    OutOfTheoremRange,
    ParameterInfeasibleError,
    ValidationError,
)
from .geometry import CircleParams, classify, derive_params, dirichlet_approx, enumerate_major_arcs
from .primes import sieve_window, siegel_walfisz_scan, theta_progression, theta_window
from .representation import (
    R_via_dft,
    count_J_direct,
    count_R_convolution,
    count_R_direct,
    major_minor_split,
)
from .singular import D_euler, D_series, G_euler, G_series

__all__ = [
    "AliasingError", "CapacityError", "CircleMethodError", "CircleParams", "D_euler",
    "D_series", "G_euler", "G_series", "OutOfTheoremRange", "ParameterInfeasibleError",
    "R_via_dft", "ValidationError", "classify", "count_J_direct", "count_R_convolution",
    "count_R_direct", "derive_params", "dirichlet_approx", "enumerate_major_arcs",
    "euler_phi", "factorize", "major_minor_split", "mobius", "ramanujan_sum",
    "ramanujan_sum_bruteforce", "siegel_walfisz_scan", "sieve_window",
    "theta_progression", "theta_window",
]
