"""Exact integer arithmetic: factorization, Moebius, Euler phi, Ramanujan sums.

Scalar functions work on Python ints of any size the factorizer can split.
The ``*_table`` helpers are numpy sieves used by the vectorized paths in
:mod:`circlemethod.singular`.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ValidationError

TRIAL_LIMIT = 10**6

# Deterministic Miller-Rabin witnesses, valid for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_LIMIT = 3_317_044_064_679_887_385_961_981


@dataclass(frozen=True)
class Factorization:
    value: int
    prime_powers: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.prime_powers)

    @property
    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.prime_powers)

    def __iter__(self):
        return iter(self.prime_powers)


@dataclass(frozen=True)
class RamanujanSum:
    q: int
    m: int
    value: int

    @classmethod
    def compute(cls, q: int, m: int) -> "RamanujanSum":
        return cls(q, m, ramanujan_sum(q, m))


@lru_cache(maxsize=1)
def _trial_primes() -> tuple[int, ...]:
    mark = np.ones(TRIAL_LIMIT + 1, dtype=bool)
    mark[:2] = False
    for p in range(2, math.isqrt(TRIAL_LIMIT) + 1):
        if mark[p]:
            mark[p * p :: p] = False
    return tuple(int(p) for p in np.flatnonzero(mark))


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 3.3e24, probabilistic above."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = _MR_BASES if n < _MR_LIMIT else _MR_BASES + tuple(
        random.Random(n).randrange(2, n - 1) for _ in range(16)
    )
    for a in bases:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    # Seeded per n so repeated calls are reproducible.
    rng = random.Random(n)
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_probable_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_brent(n)
    _split(d, out)
    _split(n // d, out)


@lru_cache(maxsize=65536)
def factorize(n: int) -> Factorization:
    """Canonical prime factorization of ``n >= 1``.

    Trial division by primes up to 10**6, then Miller-Rabin and
    Pollard-Brent on any cofactor left over.

    >>> factorize(60).prime_powers
    ((2, 2), (3, 1), (5, 1))
    """
    n = int(n)
    if n < 1:
        raise ValidationError(f"factorize requires n >= 1, got {n}")
    value, found = n, {}
    for p in _trial_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            found[p] = e
    if n > 1:
        if n <= TRIAL_LIMIT**2:
            found[n] = found.get(n, 0) + 1
        else:
            _split(n, found)
    return Factorization(value, tuple(sorted(found.items())))


def _check_positive(n: int, name: str) -> int:
    n = int(n)
    if n < 1:
        raise ValidationError(f"{name} requires n >= 1, got {n}")
    return n


def mobius(n: int) -> int:
    n = _check_positive(n, "mobius")
    f = factorize(n)
    if not f.is_squarefree:
        return 0
    return -1 if len(f.prime_powers) % 2 else 1


def euler_phi(n: int) -> int:
    n = _check_positive(n, "euler_phi")
    result = 1
    for p, e in factorize(n):
        result *= (p - 1) * p ** (e - 1)
    return result


def ramanujan_sum(q: int, m: int) -> int:
    """Closed form C_q(m) = mu(q/g) phi(q) / phi(q/g) with g = gcd(|m|, q).

    gcd(0, q) = q, so C_q(0) = phi(q).
    """
    q = int(q)
    if q < 1:
        raise ValidationError(f"ramanujan_sum requires q >= 1, got {q}")
    g = math.gcd(int(m), q)
    r = q // g
    mu_r = mobius(r)
    if mu_r == 0:
        return 0
    return mu_r * euler_phi(q) // euler_phi(r)


def ramanujan_sum_bruteforce(q: int, m: int, tol: float = 1e-6) -> int:
    """Evaluate the defining sum over a coprime to q of e(m a / q), then round.

    Phases are reduced as integers (m*a mod q) before the exponential, so
    accuracy does not degrade with |m|.
    """
    q, m = int(q), int(m)
    if q < 1:
        raise ValidationError(f"ramanujan_sum_bruteforce requires q >= 1, got {q}")
    if q > 10**6:
        raise ValidationError("ramanujan_sum_bruteforce is an oracle; q must be <= 10**6")
    a = np.arange(1, q + 1, dtype=np.int64)
    a = a[np.gcd(a, q) == 1]
    phase = (a * (m % q)) % q / q
    total = complex(np.exp(2j * np.pi * phase).sum())
    return _round_checked(total, tol, f"C_{q}({m})")


def _round_checked(z: complex, tol: float, label: str) -> int:
    k = round(z.real)
    if abs(z.imag) >= tol or abs(z.real - k) > tol:
        raise ArithmeticError(f"{label}: defining sum {z!r} is not within {tol} of an integer")
    return int(k)


def ramanujan_sum_table(q: int, tol: float = 1e-6) -> np.ndarray:
    """Defining-sum values C_q(m) for every residue m = 0..q-1 at once.

    The sum over coprime a of e(m a/q), for all m, is q times the inverse
    DFT of the coprime-residue indicator. Used as the fast brute-force
    oracle when many m share one q.
    """
    q = _check_positive(q, "ramanujan_sum_table")
    indicator = (np.gcd(np.arange(q), q) == 1).astype(float)
    values = np.fft.ifft(indicator) * q
    rounded = np.rint(values.real)
    if np.max(np.abs(values.imag), initial=0.0) >= tol or np.max(np.abs(values.real - rounded)) > tol:
        raise ArithmeticError(f"C_{q}: DFT table not integral to {tol}")
    return rounded.astype(np.int64)


def _sieve_primes(n: int) -> np.ndarray:
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    mark = np.ones(n + 1, dtype=bool)
    mark[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if mark[p]:
            mark[p * p :: p] = False
    return np.flatnonzero(mark)


def mobius_table(n: int) -> np.ndarray:
    """mu(k) for k = 0..n (index 0 unused, set to 0)."""
    mu = np.ones(n + 1, dtype=np.int8)
    mu[0] = 0
    for p in _sieve_primes(n).tolist():
        mu[p::p] *= -1
        mu[p * p :: p * p] = 0
    return mu


def phi_table(n: int) -> np.ndarray:
    """phi(k) for k = 0..n (index 0 set to 0)."""
    phi = np.arange(n + 1, dtype=np.int64)
    for p in _sieve_primes(n).tolist():
        phi[p::p] -= phi[p::p] // p
    return phi


def ramanujan_sum_vec(q: np.ndarray, m: int | np.ndarray, mu: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """Vectorized closed form; ``mu``/``phi`` are tables covering max(q)."""
    q = np.asarray(q, dtype=np.int64)
    g = np.gcd(np.asarray(m, dtype=np.int64), q)
    r = q // g
    return mu[r].astype(np.int64) * (phi[q] // phi[r])


def major_arc_coefficient(q: int, N: int) -> complex:
    """Sum over a coprime to q of mu(q)^2 C_q(2a) e(-aN/q), evaluated numerically.

    For squarefree q this equals +mu(q) C_q(-N) when q is odd and
    -mu(q) C_q(-N) when q is even; the odd-minus-even split of the
    singular series comes from that sign.
    """
    q = _check_positive(q, "major_arc_coefficient")
    mu_q = mobius(q)
    if mu_q == 0:
        return 0j
    a = np.arange(q, dtype=np.int64)
    a = a[np.gcd(a, q) == 1]
    c2a = ramanujan_sum_table(q)[(2 * a) % q].astype(float)
    phase = (a * (-int(N) % q)) % q / q
    return complex(np.sum(c2a * np.exp(2j * np.pi * phase)))


def parity_sign(q: int) -> int:
    """+1 for odd q, -1 for even q: the sign attached to each term of D(N)."""
    return 1 if q % 2 else -1
