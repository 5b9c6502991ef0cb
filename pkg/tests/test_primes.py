import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from circlemethod.errors import ValidationError
from circlemethod.primes import (
    base_primes,
    siegel_walfisz_scan,
    sieve_window,
    theta_progression,
    theta_window,
)

from conftest import trial_prime


def test_small_window_matches_trial_division(small_primes):
    w = sieve_window(0, 2000)
    assert w.primes.tolist() == small_primes
    assert np.allclose(w.log_weights, np.log(w.primes))


@given(st.integers(0, 10**6), st.integers(1, 3000))
@settings(max_examples=60, deadline=None)
def test_window_is_half_open(lo, width):
    hi = lo + width
    w = sieve_window(lo, hi)
    assert w.primes.tolist() == [n for n in range(lo + 1, hi + 1) if trial_prime(n)]


def test_segment_boundaries_do_not_matter():
    a = sieve_window(10**6, 10**6 + 50_000, segment_size=1 << 20)
    b = sieve_window(10**6, 10**6 + 50_000, segment_size=997)
    assert np.array_equal(a.primes, b.primes)


def test_prime_count_to_a_million():
    assert len(sieve_window(0, 10**6).primes) == 78498


def test_window_near_int64_limit():
    top = 2**63 - 1
    w = sieve_window(top - 400, top)
    assert w.primes[-1] == 2**63 - 25
    assert len(w.primes) > 0


def test_real_bounds_use_floor():
    assert sieve_window(10.5, 13.9).primes.tolist() == [11, 13]


def test_rejects_bad_windows():
    with pytest.raises(ValidationError):
        sieve_window(10, 10)
    with pytest.raises(ValidationError):
        sieve_window(-1, 10)


def test_views_are_read_only():
    w = sieve_window(0, 100)
    with pytest.raises(ValueError):
        w.primes[0] = 4


def test_theta_small_values():
    assert theta_progression(10, 1, 0) == pytest.approx(math.log(210), abs=1e-12)
    assert theta_progression(20, 4, 1) == pytest.approx(math.log(5 * 13 * 17), abs=1e-12)
    assert theta_progression(20, 4, 3) == pytest.approx(math.log(3 * 7 * 11 * 19), abs=1e-12)


def test_theta_classes_partition_total():
    t = 10**5
    total = theta_progression(t, 1, 0)
    for q in (3, 8, 30):
        parts = [theta_progression(t, q, r) for r in range(q) if math.gcd(q, r) == 1]
        small = sum(math.log(p) for p in range(2, q + 1) if trial_prime(p) and q % p == 0)
        assert math.fsum(parts) + small == pytest.approx(total, rel=1e-13)


def test_theta_rejects_bad_args():
    with pytest.raises(ValidationError):
        theta_progression(100, 6, 3)
    with pytest.raises(ValidationError):
        theta_progression(100, 6, 7)
    with pytest.raises(ValidationError):
        theta_progression(1, 1, 0)


def test_theta_window():
    N, A = 100, 10
    expected = sum(math.log(p) for p in range(41, 61) if trial_prime(p))
    assert theta_window(N, A) == pytest.approx(expected, abs=1e-12)


def test_siegel_walfisz_scan_shape():
    rep = siegel_walfisz_scan(10**5, 10)
    assert sum(len(row) for row in rep.table.values()) == sum(1 for q in range(1, 11) for r in range(q) if math.gcd(q, r) == 1)
    q, r = rep.argmax
    assert max(err for _, _, err in rep.table[q]) == rep.max_error
    assert rep.max_error < 0.05


def test_base_primes_cached():
    assert base_primes(1000) is base_primes(1000)
