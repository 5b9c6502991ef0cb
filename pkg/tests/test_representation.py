import math

import numpy as np
import pytest

from circlemethod.errors import AliasingError, CapacityError, ValidationError
from circlemethod.geometry import derive_params
from circlemethod.representation import (
    J_paper_claim,
    J_via_dft,
    R_via_dft,
    count_J_direct,
    count_R_convolution,
    count_R_direct,
    count_R_dft,
    dft_grid_size,
    major_minor_split,
    ratio_paper,
    ratio_robust,
)

from conftest import exhaustive_J, trial_prime


def brute_R(N, A):
    lo, hi = N / 2 - A, N / 2 + A
    sols = []
    for p3 in range(3, math.floor(A) + 1):
        if not trial_prime(p3):
            continue
        for p1 in range(math.floor(lo) + 1, math.floor(hi) + 1):
            p2 = N - p1 - 2 * p3
            if trial_prime(p1) and lo < p2 <= hi and trial_prime(p2):
                sols.append((p1, p2, p3))
    return sols


def test_known_small_case():
    rc = count_R_direct(100, 10, sample=None)
    assert rc.unweighted == 6
    assert rc.weighted == pytest.approx(122.82240165268695, rel=1e-12)
    assert sorted(rc.solutions_sample) == sorted(brute_R(100, 10))
    assert count_J_direct(100, 10).J == 49
    assert count_R_direct(100, 4).unweighted == 1


@pytest.mark.parametrize("N", [100, 202, 500, 1000, 1234, 2000])
def test_all_routes_match_brute_force(N):
    A = N / 4 if N % 4 else N // 4
    sols = brute_R(N, A)
    weighted = math.fsum(
        math.log(p1) * math.log(p2) * math.log(p3) for p1, p2, p3 in sols
    )
    for rc in (count_R_direct(N, A), count_R_convolution(N, A), count_R_dft(N, A)):
        assert rc.unweighted == len(sols)
        assert rc.weighted == pytest.approx(weighted, rel=1e-12)


def test_J_interval_arithmetic_against_enumeration():
    for N in range(100, 700, 2):
        assert count_J_direct(N, N / 4).J == exhaustive_J(N, N / 4)


def test_J_dft_is_integral_and_exact():
    for N in (100, 1000, 4002):
        assert J_via_dft(N, N / 4) == count_J_direct(N, N / 4).J
    assert J_via_dft(100, 10) == 49


def test_J_normalizations():
    j = count_J_direct(10**5, 25_000)
    assert j.over_A2 == pytest.approx(1.0, abs=1e-3)
    assert j.over_2A2 == pytest.approx(0.5, abs=1e-3)
    assert J_paper_claim(10) == 200


def test_grid_size_and_aliasing():
    assert dft_grid_size(100, 10) == 256
    assert dft_grid_size(112, 4) == 256  # strictly greater than N + 4A = 128
    with pytest.raises(AliasingError):
        R_via_dft(100, 10, M=140)
    assert R_via_dft(100, 10, M=141) == pytest.approx(122.82240165268695, rel=1e-9)


def test_capacity_limit(monkeypatch):
    monkeypatch.setenv("CIRCLEMETHOD_MEMORY_MB", "1")
    with pytest.raises(CapacityError) as info:
        R_via_dft(10**5, 25_000)
    assert info.value.exit_code == 4


def test_argument_validation():
    with pytest.raises(ValidationError):
        count_R_direct(101, 10)
    with pytest.raises(ValidationError):
        count_R_direct(100, 2)
    with pytest.raises(ValidationError):
        count_R_convolution(100, 48.5)
    with pytest.raises(ValidationError):
        count_J_direct(100, 2.5)


def test_split_sums_to_total():
    p = derive_params(10**4, profile="desk")
    s = major_minor_split(10**4, p)
    assert s.major_part + s.minor_part == pytest.approx(s.total, rel=1e-9)
    assert s.total == pytest.approx(count_R_direct(10**4, p.A).weighted, rel=1e-9)
    assert 0 <= s.minor_fraction < 0.1
    with pytest.raises(ValidationError):
        major_minor_split(10**4 + 2, p)


def test_ratios():
    assert ratio_robust(10.0, 2.0, 5) == 1.0
    assert ratio_paper(10.0, 2.0, 1) == 2.5


def test_symmetry_audit():
    rc = count_R_direct(10**4, 2500, sample=None)
    sols = set(rc.solutions_sample)
    assert len(sols) == rc.unweighted
    assert all((p2, p1, p3) in sols for p1, p2, p3 in sols)
    unordered = {(min(a, b), max(a, b), c) for a, b, c in sols}
    diagonal = sum(1 for a, b, _ in unordered if a == b)
    assert rc.unweighted == 2 * (len(unordered) - diagonal) + diagonal
    for p1, p2, p3 in list(sols)[:: max(1, len(sols) // 200)]:
        assert trial_prime(p1) and trial_prime(p2) and trial_prime(p3)
        assert p1 + p2 + 2 * p3 == 10**4
