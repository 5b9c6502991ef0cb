"""Circle parameters, major-arc enumeration, classification, Dirichlet approximation.

The unit circle is represented by the half-open fundamental domain
[-1/tau, 1 - 1/tau); every alpha is reduced into it modulo 1 before use.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .arith import euler_phi
from .errors import ParameterInfeasibleError, ValidationError

DEFAULT_EPS = 0.5
DEFAULT_LAMBDA = 10.5


class Profile(str, enum.Enum):
    paper = "paper"
    desk = "desk"
    explicit = "explicit"


@dataclass(frozen=True)
class CircleParams:
    N: int
    eps: float
    lam: float
    A: float
    Q: float
    tau: float
    profile: Profile

    def __post_init__(self):
        if not 2 < self.A < self.N / 2:
            raise ValidationError(f"A must satisfy 2 < A < N/2, got A={self.A}, N={self.N}")
        if self.Q < 1:
            raise ValidationError(f"Q must be >= 1, got {self.Q}")
        if 2 * self.Q * self.Q > self.tau:
            raise ParameterInfeasibleError(self.Q, self.tau)

    @property
    def q_max(self) -> int:
        return math.floor(self.Q)

    @property
    def halfwidth(self) -> float:
        return 1.0 / self.tau

    def as_dict(self) -> dict:
        return {
            "N": self.N,
            "eps": self.eps,
            "lambda": self.lam,
            "A": self.A,
            "Q": self.Q,
            "tau": self.tau,
            "profile": self.profile.value,
        }


def _exact_quarter(N: int):
    return N // 4 if N % 4 == 0 else N / 4


def desk_Q(N: int, A) -> int:
    """Largest integer Q >= 1 with 2Q^2 <= tau = A^2/(N Q), i.e. 2Q^3 <= A^2/N."""
    budget = A * A / N
    Q = max(1, math.floor((budget / 2) ** (1 / 3)) + 1)
    while Q > 1 and 2 * Q**3 > budget:
        Q -= 1
    return Q


def derive_params(
    N: int,
    eps: float = DEFAULT_EPS,
    lam: float = DEFAULT_LAMBDA,
    profile: Profile | str = Profile.paper,
    *,
    A=None,
    Q=None,
    tau=None,
) -> CircleParams:
    """Build :class:`CircleParams` for one of the three profiles.

    paper
        A = N exp(-eps sqrt(log N)), Q = (log N)^lam, tau = A^2/(N Q).
    desk
        A defaults to N/4 and Q to the largest integer keeping arcs
        disjoint; tau = A^2/(N Q).
    explicit
        A, Q and tau are all pinned by the caller.

    Raises ParameterInfeasibleError when the arcs would overlap
    (2Q^2 > tau); at desk-scale N that is the normal outcome of the
    paper profile.
    """
    profile = Profile(profile)
    N = int(N)
    if N % 2 or N < 100:
        raise ValidationError(f"N must be even and >= 100, got {N}")
    if not 0 < eps < 1:
        raise ValidationError(f"eps must lie in (0, 1), got {eps}")
    if lam <= 0:
        raise ValidationError(f"lambda must be positive, got {lam}")
    logN = math.log(N)
    if profile is Profile.paper:
        if any(v is not None for v in (A, Q, tau)):
            raise ValidationError("the paper profile derives A, Q, tau; use profile='explicit' to pin them")
        A = N * math.exp(-eps * math.sqrt(logN))
        Q = logN**lam
        tau = A * A / (N * Q)
    elif profile is Profile.desk:
        if tau is not None:
            raise ValidationError("the desk profile derives tau from A and Q")
        A = _exact_quarter(N) if A is None else A
        Q = desk_Q(N, A) if Q is None else Q
        tau = A * A / (N * Q)
    else:
        if A is None or Q is None or tau is None:
            raise ValidationError("the explicit profile needs A, Q and tau")
    return CircleParams(N, float(eps), float(lam), A, Q, float(tau), profile)


@dataclass(frozen=True)
class Arc:
    q: int
    a: int
    tau: float

    @property
    def center(self) -> Fraction:
        return Fraction(self.a, self.q)

    @property
    def halfwidth(self) -> float:
        return 1.0 / self.tau

    @property
    def interval(self) -> tuple[float, float]:
        c = self.a / self.q
        return c - 1.0 / self.tau, c + 1.0 / self.tau


def reduce_alpha(alpha, tau):
    """Map alpha into [-1/tau, 1 - 1/tau) modulo 1 (exact for Fractions)."""
    if isinstance(alpha, (Fraction, int)):
        x = Fraction(alpha) % 1
        if x >= 1 - 1 / Fraction(tau):
            x -= 1
        return x
    x = math.fmod(float(alpha), 1.0)
    if x < 0:
        x += 1.0
    if x >= 1.0 - 1.0 / tau:
        x -= 1.0
    return x


@dataclass(frozen=True)
class ArcPartition:
    """Major arcs M(q, a) for q <= Q; the minor set is the rest of the domain."""

    params: CircleParams
    majors: tuple[Arc, ...]

    @property
    def domain(self) -> tuple[float, float]:
        return -1.0 / self.params.tau, 1.0 - 1.0 / self.params.tau

    @property
    def count(self) -> int:
        return len(self.majors)

    @property
    def major_measure(self) -> float:
        return self.count * 2.0 / self.params.tau

    @property
    def minor_measure(self) -> float:
        return 1.0 - self.major_measure

    @cached_property
    def _index(self) -> dict[tuple[int, int], Arc]:
        return {(arc.q, arc.a): arc for arc in self.majors}

    def arc(self, q: int, a: int) -> Arc:
        return self._index[(q, a)]

    def classify(self, alpha) -> Arc | None:
        return classify(alpha, self)


def enumerate_major_arcs(params: CircleParams) -> ArcPartition:
    arcs = [
        Arc(q, a, params.tau)
        for q in range(1, params.q_max + 1)
        for a in range(q)
        if math.gcd(a, q) == 1
    ]
    expected = sum(euler_phi(q) for q in range(1, params.q_max + 1))
    assert len(arcs) == expected
    return ArcPartition(params, tuple(arcs))


def classify(alpha, partition: ArcPartition) -> Arc | None:
    """The major arc containing alpha, or None if alpha is on the minor arcs.

    Comparison is exact rational arithmetic on the float (or Fraction)
    input; a point at distance exactly 1/tau counts as major.
    """
    tau = partition.params.tau
    x = reduce_alpha(Fraction(alpha), tau)
    width = 1 / Fraction(tau)
    for q in range(1, partition.params.q_max + 1):
        a = round(x * q)
        if abs(x - Fraction(a, q)) <= width:
            a %= q
            if math.gcd(a, q) == 1:
                return partition.arc(q, a)
    return None


def classify_many(alpha: np.ndarray, partition: ArcPartition) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized classification in floating point.

    Returns ``(q, a)`` arrays; ``q == 0`` marks minor-arc points.
    """
    tau = partition.params.tau
    x = np.mod(np.asarray(alpha, dtype=np.float64), 1.0)
    x = np.where(x >= 1.0 - 1.0 / tau, x - 1.0, x)
    q_out = np.zeros(x.shape, dtype=np.int64)
    a_out = np.zeros(x.shape, dtype=np.int64)
    width = 1.0 / tau
    for q in range(1, partition.params.q_max + 1):
        a = np.rint(x * q).astype(np.int64)
        hit = (q_out == 0) & (np.abs(x - a / q) <= width)
        a = np.mod(a, q)
        hit &= np.gcd(a, q) == 1
        q_out[hit] = q
        a_out[hit] = a[hit]
    return q_out, a_out


def dirichlet_approx(alpha, tau) -> tuple[int, int]:
    """Convergent a/q of alpha with q <= tau and |alpha - a/q| < 1/(q tau).

    alpha outside the closed interval [-1/tau, 1 - 1/tau] is first reduced
    into it modulo 1. The continued fraction is expanded exactly from the
    binary value of alpha.
    """
    if tau < 1:
        raise ValidationError(f"dirichlet_approx requires tau >= 1, got {tau}")
    x = Fraction(alpha)
    width = 1 / Fraction(tau)
    if not -width <= x <= 1 - width:
        x = reduce_alpha(x, tau)
    a0 = math.floor(x)
    h_prev, h = 1, a0
    k_prev, k = 0, 1
    rem = x - a0
    while rem:
        x = 1 / rem
        digit = math.floor(x)
        rem = x - digit
        k_next = digit * k + k_prev
        if k_next > tau:
            break
        h_prev, h = h, digit * h + h_prev
        k_prev, k = k, k_next
    return h, k
