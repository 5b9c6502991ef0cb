import sys
import math

import pytest


def exhaustive_J(N: int, A) -> int:
    """Brute-force lattice count: every (n1, n3) pair, n2 forced."""
    lo, hi = N / 2 - A, N / 2 + A
    count = 0
    for n3 in range(3, math.floor(A) + 1):
        for n1 in range(math.floor(lo) + 1, math.floor(hi) + 1):
            n2 = N - n1 - 2 * n3
            if lo < n2 <= hi:
                count += 1
    return count


def trial_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@pytest.fixture
def small_primes():
    return [p for p in range(2, 2000) if trial_prime(p)]


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[key])
