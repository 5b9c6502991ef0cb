"""Trigonometric sums F, F~, u, u~ and the two empirical diagnostics built on them.

Phases are reduced modulo 1 *before* the exponential is taken:

* ``Fraction`` points a/q reduce exactly in integers, (a * (n mod q)) mod q;
* ``CirclePoint(a, q, beta)`` reduces the rational part exactly and adds
  beta * n in extended precision;
* plain floats use an extended-precision product.

All sums over a window are pairwise (numpy) reductions in ascending
prime order, which makes them deterministic.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Union

import numpy as np

from .arith import euler_phi, mobius, ramanujan_sum
from .errors import OutOfTheoremRange, ValidationError
from .geometry import CircleParams, classify, dirichlet_approx, enumerate_major_arcs, reduce_alpha
from .primes import PrimeWindow, _window_bounds, sieve_window

_EXACT_DEN_LIMIT = 1 << 31


class CirclePoint(NamedTuple):
    """alpha = a/q + beta, kept split so the rational part reduces exactly."""

    a: int
    q: int
    beta: float

    def __float__(self) -> float:
        return self.a / self.q + self.beta


Point = Union[float, Fraction, CirclePoint]


class Kind(str, enum.Enum):
    F = "F"
    Ftilde = "Ftilde"
    u = "u"
    utilde = "utilde"


def _frac_longdouble(x: np.ndarray) -> np.ndarray:
    return (x - np.floor(x)).astype(np.float64)


def phases(alpha: Point, n: np.ndarray) -> np.ndarray:
    """alpha * n modulo 1, in [0, 1), for an integer array n."""
    n = np.asarray(n, dtype=np.int64)
    if isinstance(alpha, CirclePoint):
        a, q = int(alpha.a) % int(alpha.q), int(alpha.q)
        rational = ((n % q) * a) % q / q
        beta = np.longdouble(alpha.beta) * n.astype(np.longdouble)
        return np.mod(rational + _frac_longdouble(beta), 1.0)
    if isinstance(alpha, (Fraction, int)):
        alpha = Fraction(alpha)
        num, den = alpha.numerator % alpha.denominator, alpha.denominator
        if den < _EXACT_DEN_LIMIT:
            return ((n % den) * num) % den / den
    x = np.longdouble(float(alpha)) * n.astype(np.longdouble)
    return np.mod(_frac_longdouble(x), 1.0)


def e(phase: np.ndarray) -> np.ndarray:
    """exp(2 pi i * phase) for phases already reduced modulo 1."""
    angle = 2.0 * np.pi * np.asarray(phase, dtype=np.float64)
    return np.cos(angle) + 1j * np.sin(angle)


@lru_cache(maxsize=8)
def prime_windows(N: int, A) -> tuple[PrimeWindow, PrimeWindow]:
    """(central window N/2-A < p <= N/2+A, small window 2 < p <= A)."""
    lo, hi = _window_bounds(N, A)
    if lo < 2:
        raise ValidationError(f"window (N/2-A, N/2+A] must lie above 2, got N={N}, A={A}")
    return sieve_window(lo, hi), sieve_window(2, A)


def integer_window(N: int, A) -> tuple[int, int]:
    """Inclusive integer range of N/2 - A < n <= N/2 + A."""
    lo, hi = _window_bounds(N, A)
    return math.floor(lo) + 1, math.floor(hi)


def _weighted_sum(alpha: Point, n: np.ndarray, weights: np.ndarray) -> complex:
    return complex(np.sum(weights * e(phases(alpha, n))))


def F(alpha: Point, params: CircleParams) -> complex:
    """Sum of log p * e(alpha p) over N/2 - A < p <= N/2 + A."""
    central, _ = prime_windows(params.N, params.A)
    return _weighted_sum(alpha, central.primes, central.log_weights)


def _double(alpha: Point) -> Point:
    if isinstance(alpha, CirclePoint):
        return CirclePoint(2 * alpha.a, alpha.q, 2 * alpha.beta)
    if isinstance(alpha, (Fraction, int)):
        return 2 * Fraction(alpha)
    return 2.0 * float(alpha)


def F_tilde(alpha: Point, params: CircleParams) -> complex:
    """Sum of log p * e(2 alpha p) over 2 < p <= A."""
    _, small = prime_windows(params.N, params.A)
    return _weighted_sum(_double(alpha), small.primes, small.log_weights)


def _reduce_beta(beta) -> tuple[Fraction | float, bool]:
    # Representative of beta modulo 1 in [-1/2, 1/2).
    if isinstance(beta, (Fraction, int)):
        b = (Fraction(beta) + Fraction(1, 2)) % 1 - Fraction(1, 2)
        return b, b == 0
    b = math.fmod(float(beta), 1.0)
    if b >= 0.5:
        b -= 1.0
    elif b < -0.5:
        b += 1.0
    return b, b == 0.0


def _symmetric_mod(x, period):
    # x - k*period in [-period/2, period/2]; small |x| is returned untouched
    return x - period * np.rint(x / period)


def geometric_sum(beta, n0: int, n1: int) -> complex:
    """Closed form of the sum of e(beta n) for n0 <= n <= n1.

    Evaluated as e(beta * mid) * sin(pi L beta) / sin(pi beta) with all
    large arguments reduced modulo their period in extended precision.
    """
    L = n1 - n0 + 1
    if L <= 0:
        return 0j
    b, zero = _reduce_beta(beta)
    if zero:
        return complex(L)
    if isinstance(b, Fraction):
        x, m = L * b, b * Fraction(n0 + n1, 2)
        arg = float(x - 2 * round(x / 2))
        mid_phase = float(m - round(m))
    else:
        bl = np.longdouble(b)
        arg = float(_symmetric_mod(bl * np.longdouble(L), 2))
        mid_phase = float(_symmetric_mod(bl * (np.longdouble(n0) + np.longdouble(n1)) / 2, 1))
    fb = float(b)
    if abs(fb) * L < 1e-8:
        # sin(pi L b)/sin(pi b) = L (1 - (pi b)^2 (L^2 - 1)/6 + ...), safe for subnormal b
        kernel = L * (1.0 - (math.pi * fb) ** 2 * (L * L - 1) / 6.0)
    else:
        kernel = math.sin(math.pi * arg) / math.sin(math.pi * fb)
    angle = 2.0 * math.pi * mid_phase
    return complex(kernel * math.cos(angle), kernel * math.sin(angle))


def _small_window(A) -> tuple[int, int]:
    return 3, math.floor(A)


def u(beta, params: CircleParams) -> complex:
    """Sum of e(beta n) over N/2 - A < n <= N/2 + A (closed form)."""
    n0, n1 = integer_window(params.N, params.A)
    return geometric_sum(beta, n0, n1)


def u_tilde(beta, params: CircleParams) -> complex:
    """Sum of e(2 beta n) over 2 < n <= A (closed form)."""
    n0, n1 = _small_window(params.A)
    return geometric_sum(_double(beta), n0, n1)


def u_direct(beta, params: CircleParams) -> complex:
    n0, n1 = integer_window(params.N, params.A)
    n = np.arange(n0, n1 + 1, dtype=np.int64)
    return complex(np.sum(e(phases(beta, n))))


def u_tilde_direct(beta, params: CircleParams) -> complex:
    n0, n1 = _small_window(params.A)
    n = np.arange(n0, n1 + 1, dtype=np.int64)
    return complex(np.sum(e(phases(_double(beta), n))))


def trivial_bound(kind: Kind | str, params: CircleParams) -> float:
    """Absolute value of the sum at alpha = 0, which majorizes every |value|."""
    kind = Kind(kind)
    central, small = prime_windows(params.N, params.A)
    if kind is Kind.F:
        return central.theta
    if kind is Kind.Ftilde:
        return small.theta
    n0, n1 = integer_window(params.N, params.A) if kind is Kind.u else _small_window(params.A)
    return float(max(0, n1 - n0 + 1))


_EVALUATORS = {Kind.F: F, Kind.Ftilde: F_tilde, Kind.u: u, Kind.utilde: u_tilde}


@dataclass(frozen=True)
class ExpSumSample:
    alpha: Point
    kind: Kind
    value: complex
    params: CircleParams

    @property
    def within_trivial_bound(self) -> bool:
        return abs(self.value) <= trivial_bound(self.kind, self.params) * (1 + 1e-12)


def evaluate(kind: Kind | str, alpha: Point, params: CircleParams) -> ExpSumSample:
    kind = Kind(kind)
    return ExpSumSample(alpha, kind, _EVALUATORS[kind](alpha, params), params)


@dataclass(frozen=True)
class Residual:
    q: int
    a: int
    beta: float
    rF: float
    rFt: float


def major_arc_residual(q: int, a: int, beta: float, params: CircleParams) -> Residual:
    """Distance of F, F~ at a/q + beta from their major-arc approximations.

    rF  = |F(a/q + beta) - mu(q)/phi(q) * u(beta)|
    rFt = |F~(a/q + beta) - C_q(2a)/phi(q) * u~(beta)|
    """
    if math.gcd(a, q) != 1 or not 0 <= a < q:
        raise ValidationError(f"need 0 <= a < q with gcd(a, q) = 1, got a={a}, q={q}")
    if q > params.Q:
        raise ValidationError(f"q = {q} exceeds Q = {params.Q}")
    if abs(beta) > 1.0 / params.tau:
        raise ValidationError(f"|beta| = {abs(beta)} exceeds 1/tau = {1.0 / params.tau}")
    point = CirclePoint(a, q, beta)
    phi = euler_phi(q)
    rF = abs(F(point, params) - mobius(q) / phi * u(beta, params))
    rFt = abs(F_tilde(point, params) - ramanujan_sum(q, 2 * a) / phi * u_tilde(beta, params))
    return Residual(q, a, beta, rF, rFt)


def max_residual(params: CircleParams, q_max: int = 5, n_beta: int = 9) -> float:
    """Largest rF / A over q <= q_max, coprime a, and an evenly spaced beta grid."""
    betas = np.linspace(-1.0, 1.0, n_beta) / params.tau
    worst = 0.0
    for q in range(1, q_max + 1):
        for a in range(q):
            if math.gcd(a, q) != 1:
                continue
            for beta in betas.tolist():
                worst = max(worst, major_arc_residual(q, a, beta, params).rF / params.A)
    return worst


def vinogradov_H(N: int) -> float:
    return math.exp(0.5 * math.sqrt(math.log(N)))


@dataclass(frozen=True)
class VinogradovBound:
    alpha: float
    q: int
    a: int
    H: float
    bound: float
    value: float
    ratio: float


def vinogradov_ratio(alpha, params: CircleParams, partition=None) -> VinogradovBound:
    """Ratio |F~(alpha)| / (A log^4 N (sqrt(q/A) + sqrt(1/q) + 1/H)) at a minor-arc point."""
    partition = partition or enumerate_major_arcs(params)
    if classify(alpha, partition) is not None:
        raise ValidationError(f"alpha = {alpha} lies on a major arc")
    x = reduce_alpha(Fraction(alpha), params.tau)
    a, q = dirichlet_approx(x, params.tau)
    if q > params.A:
        raise OutOfTheoremRange(f"Dirichlet denominator q = {q} exceeds A = {params.A}")
    H = vinogradov_H(params.N)
    logN = math.log(params.N)
    bound = params.A * logN**4 * (math.sqrt(q / params.A) + math.sqrt(1.0 / q) + 1.0 / H)
    value = abs(F_tilde(x, params))
    return VinogradovBound(float(x), q, a, H, bound, value, value / bound)
