import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from circlemethod.arith import euler_phi
from circlemethod.errors import ParameterInfeasibleError, ValidationError
from circlemethod.geometry import (
    classify,
    classify_many,
    derive_params,
    desk_Q,
    dirichlet_approx,
    enumerate_major_arcs,
    reduce_alpha,
)


def test_desk_defaults():
    p = derive_params(10**6, profile="desk")
    assert p.A == 250_000 and isinstance(p.A, int)
    assert p.Q == 31
    assert 2 * p.Q**2 <= p.tau == pytest.approx(p.A**2 / (p.N * p.Q))
    assert [desk_Q(N, N / 4) for N in (100, 10**4, 10**5, 10**6)] == [1, 6, 14, 31]


def test_desk_Q_is_largest_feasible():
    for N in (100, 1234, 10**4, 10**5, 10**6, 10**8):
        A = N / 4
        Q = desk_Q(N, A)
        assert 2 * Q**3 <= A * A / N or Q == 1
        assert 2 * (Q + 1) ** 3 > A * A / N


def test_paper_profile_infeasible_at_desk_scale():
    with pytest.raises(ParameterInfeasibleError) as info:
        derive_params(10**6, profile="paper")
    assert info.value.exit_code == 3


def test_paper_profile_formulas():
    N, eps, lam = 10**6, 0.5, 0.1
    p = derive_params(N, eps, lam, "paper")
    assert p.A == pytest.approx(N * math.exp(-eps * math.sqrt(math.log(N))))
    assert p.Q == pytest.approx(math.log(N) ** lam)
    assert p.tau == pytest.approx(p.A**2 / (N * p.Q))


def test_profile_argument_rules():
    with pytest.raises(ValidationError):
        derive_params(10**4, profile="paper", A=100)
    with pytest.raises(ValidationError):
        derive_params(10**4, profile="desk", tau=100.0)
    with pytest.raises(ValidationError):
        derive_params(10**4, profile="explicit", A=100, Q=2)
    with pytest.raises(ValidationError):
        derive_params(101, profile="desk")
    with pytest.raises(ParameterInfeasibleError):
        derive_params(10**4, profile="explicit", A=1000, Q=10, tau=100.0)


def explicit(Q=3, tau=40.0, N=1000, A=250):
    return derive_params(N, profile="explicit", A=A, Q=Q, tau=tau)


def test_arc_count_and_measure():
    part = enumerate_major_arcs(explicit(Q=4, tau=40.0))
    assert part.count == sum(euler_phi(q) for q in range(1, 5)) == 6
    assert part.major_measure == pytest.approx(6 * 2 / 40)
    assert part.major_measure + part.minor_measure == pytest.approx(1.0)


def test_arcs_disjoint_when_feasible():
    part = enumerate_major_arcs(explicit(Q=4, tau=32.0))
    spans = sorted(Fraction(a.a, a.q) for a in part.majors)
    spans = [s if s < 1 - Fraction(1, 32) else s - 1 for s in spans]
    spans.sort()
    gaps = [b - a for a, b in zip(spans, spans[1:])] + [spans[0] + 1 - spans[-1]]
    assert min(gaps) >= 2 * Fraction(1, 32)


def test_classify_boundaries():
    part = enumerate_major_arcs(explicit(Q=3, tau=40.0))
    w = Fraction(1, 40)
    assert classify(Fraction(0), part).q == 1
    assert classify(w, part).q == 1  # distance exactly 1/tau is major
    assert classify(w + Fraction(1, 10**9), part) is None
    assert classify(-w, part).q == 1
    assert classify(1 - w, part).q == 1  # reduces to -1/tau
    arc = classify(Fraction(2, 3) + w / 2, part)
    assert (arc.q, arc.a) == (3, 2)
    assert classify(Fraction(1, 2) - w, part).a == 1
    assert classify(0.3, part) is None


def test_reduce_alpha_domain():
    tau = 40
    for x in (Fraction(-1, 40), Fraction(39, 40), Fraction(7, 3), Fraction(-5, 2)):
        r = reduce_alpha(x, tau)
        assert -Fraction(1, 40) <= r < 1 - Fraction(1, 40)
        assert (r - x).denominator == 1
    assert reduce_alpha(0.99, 40) == pytest.approx(-0.01)


@given(st.floats(-3, 3, allow_nan=False))
@settings(max_examples=300, deadline=None)
def test_classify_many_agrees_off_boundary(x):
    part = enumerate_major_arcs(explicit(Q=5, tau=60.0))
    q, a = classify_many(np.array([x]), part)
    exact = classify(x, part)
    # the vectorized float path may differ only within rounding of an arc edge
    r = float(reduce_alpha(Fraction(x), 60.0))
    near_edge = any(abs(abs(r - k / m) - 1 / 60) < 1e-12 for m in range(1, 6) for k in range(-1, m + 1))
    if not near_edge:
        assert (int(q[0]), int(a[0])) == ((exact.q, exact.a) if exact else (0, 0))


def test_dirichlet_known():
    assert dirichlet_approx(math.pi - 3, 100) == (1, 7)
    assert dirichlet_approx(0.5, 2) == (1, 2)
    assert dirichlet_approx(Fraction(3, 7), 10) == (3, 7)
    with pytest.raises(ValidationError):
        dirichlet_approx(0.3, 0.5)


@given(st.floats(-5, 5, allow_nan=False), st.floats(1, 10**6))
@settings(max_examples=400, deadline=None)
def test_dirichlet_property(alpha, tau):
    a, q = dirichlet_approx(alpha, tau)
    assert 1 <= q <= tau
    x = Fraction(alpha)
    nearest = min(abs(x - (Fraction(a, q) + k)) for k in range(-6, 7))
    assert nearest <= 1 / (q * Fraction(tau))
