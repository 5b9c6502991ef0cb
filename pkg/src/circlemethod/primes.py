"""Segmented sieve over half-open windows and Chebyshev-type theta sums."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import ValidationError
from .arith import euler_phi, is_probable_prime

SEGMENT_SIZE = 1 << 20
MAX_HI = 2**63 - 1
# Above this sqrt(hi), base primes are not materialized; survivors of a
# small-prime presieve are tested with deterministic Miller-Rabin instead.
BASE_LIMIT = 10**7
PRESIEVE_LIMIT = 10**5


@dataclass(frozen=True)
class PrimeWindow:
    """Primes p with lo < p <= hi and their natural logarithms.

    ``lo`` and ``hi`` may be real; membership is decided against the real
    bounds. The arrays are read-only and safe to share.
    """

    lo: float
    hi: float
    primes: np.ndarray = field(repr=False)
    log_weights: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return len(self.primes)

    @property
    def theta(self) -> float:
        return math.fsum(self.log_weights)

    def as_set(self) -> frozenset[int]:
        return frozenset(self.primes.tolist())


def _floor_bound(x) -> int:
    return x if isinstance(x, int) else math.floor(x)


@lru_cache(maxsize=8)
def base_primes(limit: int) -> np.ndarray:
    """All primes <= limit by a plain sieve (used for sieving segments)."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    mark = np.ones(limit + 1, dtype=bool)
    mark[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mark[p]:
            mark[p * p :: p] = False
    out = np.flatnonzero(mark).astype(np.int64)
    out.flags.writeable = False
    return out


def _sieve_segment(start: int, stop: int, base: np.ndarray) -> np.ndarray:
    """Primes in [start, stop) given every prime up to sqrt(stop)."""
    mark = np.ones(stop - start, dtype=bool)
    if start < 2:
        mark[: 2 - start] = False
    for p in base.tolist():
        pp = p * p
        if pp >= stop:
            break
        first = max(pp, -(-start // p) * p)
        mark[first - start :: p] = False
    return np.flatnonzero(mark).astype(np.int64) + start


def _presieve_segment(start: int, stop: int, small: np.ndarray) -> list[int]:
    # Every prime in [start, stop) here exceeds PRESIEVE_LIMIT**2.
    mark = np.ones(stop - start, dtype=bool)
    for p in small.tolist():
        mark[(-start) % p :: p] = False
    return [start + int(i) for i in np.flatnonzero(mark)]


def sieve_window(lo, hi, segment_size: int = SEGMENT_SIZE) -> PrimeWindow:
    """Primes in (lo, hi], ascending, with log weights.

    A windowed segmented sieve: only [floor(lo)+1, floor(hi)] is marked, with
    base primes up to sqrt(hi), so a window near N/2 never touches [0, N/2].
    """
    if not lo < hi:
        raise ValidationError(f"sieve_window needs lo < hi, got ({lo}, {hi}]")
    if lo < 0:
        raise ValidationError(f"sieve_window needs lo >= 0, got {lo}")
    start, last = _floor_bound(lo) + 1, _floor_bound(hi)
    if last > MAX_HI:
        raise ValidationError(f"hi exceeds {MAX_HI}")
    root = math.isqrt(last)
    chunks = []
    if root <= BASE_LIMIT:
        base = base_primes(root)
        for seg in range(start, last + 1, segment_size):
            chunks.append(_sieve_segment(seg, min(seg + segment_size, last + 1), base))
    else:
        small = base_primes(PRESIEVE_LIMIT)
        for seg in range(start, last + 1, segment_size):
            stop = min(seg + segment_size, last + 1)
            survivors = _presieve_segment(seg, stop, small)
            chunks.append(np.array([n for n in survivors if is_probable_prime(n)], dtype=np.int64))
    primes = np.concatenate(chunks) if chunks else np.zeros(0, dtype=np.int64)
    logs = np.log(primes.astype(np.float64))
    primes.flags.writeable = False
    logs.flags.writeable = False
    return PrimeWindow(lo, hi, primes, logs)


def _check_theta_args(t: int, q: int, r: int) -> None:
    if q < 1:
        raise ValidationError(f"modulus q must be >= 1, got {q}")
    if not 0 <= r < q:
        raise ValidationError(f"residue r must satisfy 0 <= r < q, got r={r}, q={q}")
    if math.gcd(q, r) != 1:
        raise ValidationError(f"theta(t;q,r) requires gcd(q, r) = 1, got q={q}, r={r}")
    if t < 2:
        raise ValidationError(f"theta(t;q,r) requires t >= 2, got {t}")


def theta_progression(t, q: int, r: int, window: PrimeWindow | None = None) -> float:
    """Sum of log p over primes p <= t with p = r (mod q).

    Summation is correctly rounded (``math.fsum``), hence independent of
    order and reproducible.
    """
    _check_theta_args(t, q, r)
    if window is None or window.lo > 0 or window.hi < t:
        window = sieve_window(0, t)
    keep = window.primes <= t
    if q > 1:
        keep &= window.primes % q == r
    return math.fsum(window.log_weights[keep])


def theta_window(N: int, A) -> float:
    """Sum of log p over N/2 - A < p <= N/2 + A."""
    if N / 2 - A < 2:
        raise ValidationError(f"window (N/2-A, N/2+A] must lie above 2, got N={N}, A={A}")
    lo, hi = _window_bounds(N, A)
    return sieve_window(lo, hi).theta


def _window_bounds(N: int, A):
    # Exact integer bounds when A is integral and N even.
    if isinstance(A, int) and N % 2 == 0:
        return N // 2 - A, N // 2 + A
    return N / 2 - A, N / 2 + A


@dataclass
class SiegelWalfiszReport:
    t: int
    q_max: int
    max_error: float
    argmax: tuple[int, int]
    # q -> [(r, theta(t;q,r), |theta - t/phi(q)| / t), ...]
    table: dict[int, list[tuple[int, float, float]]]


def siegel_walfisz_scan(t: int, q_max: int) -> SiegelWalfiszReport:
    """Normalized errors |theta(t;q,r) - t/phi(q)| / t for q <= q_max, (r,q)=1."""
    if t < 100:
        raise ValidationError(f"siegel_walfisz_scan needs t >= 100, got {t}")
    if not 1 <= q_max <= t:
        raise ValidationError(f"q_max must be in [1, t], got {q_max}")
    window = sieve_window(0, t)
    table: dict[int, list[tuple[int, float, float]]] = {}
    worst, where = -1.0, (1, 0)
    for q in range(1, q_max + 1):
        main = t / euler_phi(q)
        residues = window.primes % q
        row = []
        for r in range(q):
            if math.gcd(q, r) != 1:
                continue
            theta = math.fsum(window.log_weights[residues == r])
            err = abs(theta - main) / t
            row.append((r, theta, err))
            if err > worst:
                worst, where = err, (q, r)
        table[q] = row
    return SiegelWalfiszReport(t, q_max, worst, where, table)
