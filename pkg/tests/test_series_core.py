import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gevreykit import (CoefficientSequence, DegenerateSequenceError, DomainError,
                       bernoulli_asymptotic, bernoulli_numbers, binet_taylor_coeffs,
                       gevrey_order_estimate, series_reciprocal, stirling_coeffs)


def test_bernoulli_small_values():
    B = bernoulli_numbers(6)
    assert B[0] == 1
    assert B[1] == Fraction(-1, 2)
    assert B[2] == Fraction(1, 6)
    assert B[4] == Fraction(-1, 30)
    assert B[12] == Fraction(-691, 2730)
    assert len(B) == 13
    assert bernoulli_numbers(0).values == (Fraction(1),)


def test_bernoulli_against_mpmath_bernfrac():
    B = bernoulli_numbers(30)
    for n in range(2, 61):
        p, q = mpmath.bernfrac(n)
        assert B[n] == Fraction(int(p), int(q)), n


def test_generating_function_residual_is_zero():
    # t/(e^t - 1) * (e^t - 1)/t == 1 term by term
    n_max = 8
    B = bernoulli_numbers(n_max)
    n_terms = 2 * n_max + 2
    g = [B[j] / math.factorial(j) for j in range(n_terms - 1)]
    e = [Fraction(1, math.factorial(j + 1)) for j in range(n_terms - 1)]
    prod = [sum(g[i] * e[k - i] for i in range(k + 1)) for k in range(n_terms - 1)]
    assert prod[0] == 1 and all(c == 0 for c in prod[1:])


def test_bernoulli_sign_alternation():
    B = bernoulli_numbers(40)
    for k in range(1, 41):
        assert (-1) ** (k + 1) * B[2 * k] > 0


def test_binet_taylor_values():
    f = binet_taylor_coeffs(4)
    assert f.values == (Fraction(1, 12), 0, Fraction(-1, 720), 0, Fraction(1, 30240))
    assert f.kind == "binet-taylor"


def test_binet_taylor_against_mpmath_taylor():
    def F(t):
        return (mpmath.mpf(1) / 2 - 1 / t + 1 / mpmath.expm1(t)) / t

    with mpmath.workdps(60):
        # Taylor coefficients from Cauchy integrals on |t| = 1 (radius 2 pi)
        ref = mpmath.taylor(F, 0, 12, method="quad", radius=1)
    f = binet_taylor_coeffs(12)
    for k in range(13):
        assert abs(float(f[k]) - float(ref[k])) < 1e-25 + 1e-14 * abs(float(f[k]))


def test_stirling_values_and_identities():
    p = stirling_coeffs(4)
    assert p.values == (Fraction(1, 12), 0, Fraction(-1, 360), 0, Fraction(1, 1260))
    p40 = stirling_coeffs(40)
    f40 = binet_taylor_coeffs(40)
    B = bernoulli_numbers(21)
    for k in range(41):
        assert p40[k] == f40[k] * math.factorial(k)
    for k in range(1, 21):
        assert p40[2 * k - 2] == B[2 * k] / (2 * k * (2 * k - 1))


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=30))
def test_evenness_and_cross_formula(n_max):
    f = binet_taylor_coeffs(n_max)
    p = stirling_coeffs(n_max)
    assert all(v == 0 for v in f.values[1::2])
    assert all(v == 0 for v in p.values[1::2])
    assert len(p) == n_max + 1


def test_kind_invariants_rejected():
    with pytest.raises(DomainError):
        CoefficientSequence((1, 1), "stirling")
    with pytest.raises(DomainError):
        CoefficientSequence((2,), "bernoulli")
    with pytest.raises(DomainError):
        CoefficientSequence((1,), "nonsense")


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(max_denominator=10**6), min_size=1, max_size=20))
def test_json_round_trip(values):
    seq = CoefficientSequence(tuple(values))
    assert CoefficientSequence.from_json(seq.to_json()) == seq


def test_json_accepts_hand_written_values():
    seq = CoefficientSequence.from_json('{"kind": "user", "values": [1, "-1/3", 0.5]}')
    assert seq.values == (1, Fraction(-1, 3), Fraction(1, 2))
    with pytest.raises(DomainError):
        CoefficientSequence.from_json('{"values": [1]}')


def test_bernoulli_asymptotic():
    B = bernoulli_numbers(21)
    assert abs(float(B[42]) / bernoulli_asymptotic(20) - 1) < 0.01
    assert bernoulli_asymptotic(0) == pytest.approx(4 / (4 * math.pi ** 2))
    signs = [math.copysign(1, bernoulli_asymptotic(n)) for n in range(10)]
    assert signs == [1, -1] * 5
    assert bernoulli_asymptotic(400) in (math.inf, -math.inf)
    with pytest.raises(DomainError):
        bernoulli_asymptotic(-1)


def test_bernoulli_asymptotic_error_decreases():
    # the relative error is ~4^-(n+1), below double resolution past n ~ 22,
    # so the monotonicity is checked at 60 digits
    B = bernoulli_numbers(32)
    with mpmath.workdps(60):
        errs = []
        for n in range(5, 31):
            lead = 2 * mpmath.factorial(2 * n + 2) / (2 * mpmath.pi) ** (2 * n + 2) * (-1) ** n
            b = mpmath.mpf(B[2 * n + 2].numerator) / B[2 * n + 2].denominator
            errs.append(abs(b / lead - 1))
            assert abs(bernoulli_asymptotic(n) / float(lead) - 1) < 1e-13
    assert all(a > b for a, b in zip(errs, errs[1:]))


def test_gevrey_order_estimate():
    p = stirling_coeffs(40)
    assert 0.8 <= gevrey_order_estimate(p, (10, 40)) <= 1.2
    sq = [math.factorial(n) ** 2 for n in range(41)]
    assert 0.4 <= gevrey_order_estimate(sq, range(10, 41)) <= 0.6
    assert gevrey_order_estimate([1] * 40) == math.inf


def test_gevrey_order_estimate_errors():
    with pytest.raises(DegenerateSequenceError, match="degenerate"):
        gevrey_order_estimate([0] * 20)
    with pytest.raises(DegenerateSequenceError):
        gevrey_order_estimate([0, 1, 0, 0, 0, 0, 0, 1, 0, 0])
    with pytest.raises(DomainError):
        gevrey_order_estimate([1] * 5)
    with pytest.raises(DomainError):
        gevrey_order_estimate([1] * 10, (0, 20))


def test_series_reciprocal():
    assert series_reciprocal([1, -1], 5) == [1, 1, 1, 1, 1]
    with pytest.raises(DomainError):
        series_reciprocal([0, 1], 3)
