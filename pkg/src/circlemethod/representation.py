"""Representation counts N = p1 + p2 + 2 p3 and the circle-method identities.

Three routes compute the same weighted count R(N, A):

* :func:`count_R_direct` loops over p3 and tests p2 = N - p1 - 2 p3;
* :func:`count_R_convolution` autocorrelates the weighted window;
* :func:`R_via_dft` evaluates the discretized circle integral
  (1/M) sum_k F(k/M)^2 F~(k/M) e(-N k/M) on an alias-free grid.

Pairs (p1, p2) are ordered, as the square of one exponential sum demands.
"""

from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass, field

import numpy as np

from .errors import AliasingError, CapacityError, ValidationError
from .expsums import integer_window, prime_windows
from .geometry import ArcPartition, CircleParams, classify_many, enumerate_major_arcs

MEMORY_ENV = "CIRCLEMETHOD_MEMORY_MB"
DEFAULT_MEMORY_MB = 2048
DIRECT_CONVOLUTION_LIMIT = 1 << 16


class CountMethod(str, enum.Enum):
    direct = "direct"
    convolution = "convolution"
    dft = "dft"


@dataclass(frozen=True)
class RepCount:
    N: int
    A: float
    weighted: float
    unweighted: int
    method: CountMethod
    solutions_sample: tuple[tuple[int, int, int], ...] = field(default=(), repr=False)


@dataclass(frozen=True)
class LatticeCount:
    N: int
    A: float
    J: int

    @property
    def over_A2(self) -> float:
        return self.J / (self.A * self.A)

    @property
    def over_2A2(self) -> float:
        return self.J / (2 * self.A * self.A)


def memory_budget() -> int:
    """Bytes allowed for one dense working array set (env-configurable)."""
    raw = os.environ.get(MEMORY_ENV)
    mb = DEFAULT_MEMORY_MB if raw is None else float(raw)
    return int(mb * 2**20)


def _require_capacity(nbytes: int, what: str) -> None:
    budget = memory_budget()
    if nbytes > budget:
        raise CapacityError(f"{what} needs ~{nbytes / 2**20:.1f} MiB, budget is {budget / 2**20:.1f} MiB ({MEMORY_ENV})")


def _check_count_args(N: int, A) -> int:
    N = int(N)
    if N % 2:
        raise ValidationError(f"N must be even, got {N}")
    if not 2 < A < N / 2 - 2:
        raise ValidationError(f"need 2 < A < N/2 - 2, got A={A}, N={N}")
    return N


def _window_tables(N: int, A):
    central, small = prime_windows(N, A)
    n0, n1 = integer_window(N, A)
    width = n1 - n0 + 1
    is_prime = np.zeros(width, dtype=bool)
    logw = np.zeros(width, dtype=np.float64)
    idx = central.primes - n0
    is_prime[idx] = True
    logw[idx] = central.log_weights
    return central, small, n0, n1, is_prime, logw


def count_R_direct(N: int, A, sample: int | None = 16) -> RepCount:
    """Count by ascending p3, then ascending p1, with a membership test for p2.

    ``sample`` bounds the audit list of solutions; ``None`` keeps them all.
    """
    N = _check_count_args(N, A)
    central, small, n0, n1, is_prime, logw = _window_tables(N, A)
    p1, l1 = central.primes, central.log_weights
    weighted_parts, count, found = [], 0, []
    for p3, l3 in zip(small.primes.tolist(), small.log_weights.tolist()):
        p2 = N - 2 * p3 - p1
        ok = (p2 >= n0) & (p2 <= n1)
        j = p2[ok] - n0
        hit = is_prime[j]
        k = int(hit.sum())
        if not k:
            continue
        count += k
        weighted_parts.append(l3 * float(np.sum(l1[ok][hit] * logw[j[hit]])))
        if sample is None or len(found) < sample:
            room = None if sample is None else sample - len(found)
            for a, b in zip(p1[ok][hit][:room].tolist(), p2[ok][hit][:room].tolist()):
                found.append((a, b, p3))
    return RepCount(N, A, math.fsum(weighted_parts), count, CountMethod.direct, tuple(found))


def _autocorrelate(w: np.ndarray) -> np.ndarray:
    """Full self-convolution of a real array."""
    if 2 * len(w) <= DIRECT_CONVOLUTION_LIMIT:
        return np.convolve(w, w)
    size = 1 << (2 * len(w) - 2).bit_length()
    spec = np.fft.rfft(w, size)
    return np.fft.irfft(spec * spec, size)[: 2 * len(w) - 1]


def count_R_convolution(N: int, A) -> RepCount:
    """Pair-sum weights h(m) over the p1 window, then R = sum over p3 of h(N - 2 p3) log p3."""
    N = _check_count_args(N, A)
    n0, n1 = integer_window(N, A)
    _require_capacity(8 * 12 * (n1 - n0 + 1), "pair-sum convolution")
    central, small, n0, n1, is_prime, logw = _window_tables(N, A)
    h = _autocorrelate(logw)
    c = _autocorrelate(is_prime.astype(np.float64))
    j = N - 2 * small.primes - 2 * n0
    ok = (j >= 0) & (j < len(h))
    weighted = float(np.sum(h[j[ok]] * small.log_weights[ok]))
    count = int(np.rint(c[j[ok]]).astype(np.int64).sum())
    return RepCount(N, A, weighted, count, CountMethod.convolution)


def count_J_direct(N: int, A) -> LatticeCount:
    """Integer triples n1 + n2 + 2 n3 = N in the same windows, by interval intersection."""
    N = int(N)
    if N % 2:
        raise ValidationError(f"N must be even, got {N}")
    if A < 3:
        raise ValidationError(f"need A >= 3, got {A}")
    n0, n1 = integer_window(N, A)
    n3 = np.arange(3, math.floor(A) + 1, dtype=np.int64)
    s = N - 2 * n3
    lo = np.maximum(n0, s - n1)
    hi = np.minimum(n1, s - n0)
    return LatticeCount(N, A, int(np.clip(hi - lo + 1, 0, None).sum()))


def J_paper_claim(A) -> float:
    """The main term 2A^2 as stated for J(N, A)."""
    return 2.0 * A * A


def dft_grid_size(N: int, A) -> int:
    """Smallest power of two strictly greater than N + 4A."""
    return 1 << math.floor(N + 4 * A).bit_length()


def _check_grid(N: int, A, M: int | None) -> int:
    M = dft_grid_size(N, A) if M is None else int(M)
    if M <= N + 4 * A:
        raise AliasingError(f"grid M = {M} must exceed N + 4A = {N + 4 * A}")
    _require_capacity(16 * 8 * M, f"DFT grid of size {M}")
    return M


def _grid_transform(values: np.ndarray, M: int) -> np.ndarray:
    # sum_n values[n] e(k n / M) for k = 0..M-1
    return np.fft.ifft(values, M) * M


def _circle_summands(N: int, w_central: np.ndarray, w_small2: np.ndarray, M: int) -> np.ndarray:
    """Per-grid-point summands (1/M) S(k/M)^2 S~(k/M) e(-N k/M)."""
    S = _grid_transform(w_central, M)
    St = _grid_transform(w_small2, M)
    k = np.arange(M, dtype=np.int64)
    twist = np.exp(-2j * np.pi * ((k * (N % M)) % M) / M)
    return S * S * St * twist / M


def _prime_grid_weights(N: int, A, M: int, weighted: bool = True) -> tuple[np.ndarray, np.ndarray]:
    central, small = prime_windows(N, A)
    w1 = np.zeros(M, dtype=np.float64)
    w1[central.primes] = central.log_weights if weighted else 1.0
    w3 = np.zeros(M, dtype=np.float64)
    w3[2 * small.primes] = small.log_weights if weighted else 1.0
    return w1, w3


def _lattice_grid_weights(N: int, A, M: int) -> tuple[np.ndarray, np.ndarray]:
    n0, n1 = integer_window(N, A)
    w1 = np.zeros(M, dtype=np.float64)
    w1[n0 : n1 + 1] = 1.0
    w3 = np.zeros(M, dtype=np.float64)
    w3[2 * np.arange(3, math.floor(A) + 1)] = 1.0
    return w1, w3


def _real_part_checked(total: complex) -> float:
    if abs(total.imag) > 1e-6 * (1 + abs(total.real)):
        raise ArithmeticError(f"circle integral has imaginary part {total.imag!r}")
    return total.real


def R_via_dft(N: int, A, M: int | None = None, weighted: bool = True) -> float:
    """Weighted count from the discretized circle integral over the grid k/M.

    With ``weighted=False`` the log weights are replaced by 1 and the
    result is the (float) number of ordered solutions.
    """
    N = _check_count_args(N, A)
    M = _check_grid(N, A, M)
    terms = _circle_summands(N, *_prime_grid_weights(N, A, M, weighted), M)
    return _real_part_checked(complex(np.sum(terms)))


def count_R_dft(N: int, A, M: int | None = None) -> RepCount:
    weighted = R_via_dft(N, A, M)
    unweighted = R_via_dft(N, A, M, weighted=False)
    return RepCount(N, A, weighted, int(round(unweighted)), CountMethod.dft)


def J_via_dft(N: int, A, M: int | None = None) -> int:
    """Lattice count from the same integral with u^2 u~ in place of F^2 F~."""
    N = int(N)
    M = _check_grid(N, A, M)
    terms = _circle_summands(N, *_lattice_grid_weights(N, A, M), M)
    value = _real_part_checked(complex(np.sum(terms)))
    J = round(value)
    if abs(value - J) > 1e-6 * max(1.0, abs(value)):
        raise ArithmeticError(f"lattice integral {value!r} is not integral")
    return int(J)


@dataclass(frozen=True)
class ArcSplit:
    major_part: float
    minor_part: float
    total: float
    M: int
    major_points: int

    @property
    def minor_fraction(self) -> float:
        return abs(self.minor_part) / abs(self.total) if self.total else math.nan


def major_minor_split(N: int, params: CircleParams, M: int | None = None, partition: ArcPartition | None = None) -> ArcSplit:
    """Route every grid summand of :func:`R_via_dft` to the major or minor arcs."""
    N = _check_count_args(N, params.A)
    if N != params.N:
        raise ValidationError(f"params were derived for N = {params.N}, not {N}")
    M = _check_grid(N, params.A, M)
    partition = partition or enumerate_major_arcs(params)
    terms = _circle_summands(N, *_prime_grid_weights(N, params.A, M), M)
    q, _ = classify_many(np.arange(M) / M, partition)
    major = q > 0
    major_part = float(np.sum(terms[major].real))
    minor_part = float(np.sum(terms[~major].real))
    total = _real_part_checked(complex(np.sum(terms)))
    return ArcSplit(major_part, minor_part, total, M, int(major.sum()))


def ratio_robust(R: float, D: float, J: int) -> float:
    """R / (D(N) J(N, A)); tends to 1 if the singular series predicts R."""
    return R / (D * J)


def ratio_paper(R: float, D: float, A) -> float:
    """R / (2 D(N) A^2), the normalization of the stated main term."""
    return R / (2.0 * D * A * A)
