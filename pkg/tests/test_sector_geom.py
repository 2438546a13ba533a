import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gevreykit import (ADeltaProfile, DomainError, HalfPlane, MDeltaProfile, Sector,
                       a_delta_condition, c_inequality_constant, c_inequality_holds,
                       carleman_loglog, criticality, halfplane_contains, havin_shift,
                       log_integral_divergence, opening, t_regions)

PI = math.pi


def test_opening():
    assert opening(Sector(-PI / 2, PI / 2)) == PI
    assert opening(Sector(0, 0.1)) == 0.1
    assert opening(Sector(-PI, PI)) == 2 * PI


def test_criticality():
    assert criticality(Sector(-PI / 2, PI / 2), 1) == "critical"
    assert criticality(Sector(-PI / 2 - 0.1, PI / 2 + 0.1), 1) == "supercritical"
    assert criticality(Sector(0, PI / 4), 2) == "subcritical"
    assert criticality(Sector(-PI / 4, PI / 4), 2) == "critical"
    with pytest.raises(DomainError):
        criticality(Sector(0, 1), 0)


def test_sector_contains():
    s = Sector(-PI / 4, PI / 4)
    assert s.contains(1)
    assert not s.contains(1j)
    assert not s.contains(0)
    wide = Sector(-PI, PI)
    assert wide.contains(-1 + 1e-9j)
    assert Sector(PI / 2, 3 * PI / 2).contains(-1)


def test_halfplane_examples():
    h = HalfPlane(0, 1)
    assert halfplane_contains(h, 0)
    assert not halfplane_contains(h, 1)
    assert h.on_boundary(1) and h.closure_contains(1)
    assert halfplane_contains(HalfPlane(PI / 4, 1), 1j)
    with pytest.raises(DomainError):
        HalfPlane(0, 0)


def test_t_regions_examples():
    assert t_regions(PI / 6, 1).apex == pytest.approx(2)
    r = t_regions(PI / 4, 1)
    assert r.in_S1(0)
    assert r.in_Sr(3) and not r.in_S2(3)
    assert r.in_Sr(r.apex * (1 + 1e-9)) and not r.in_Sr_closure(r.apex * (1 - 1e-9))
    with pytest.raises(DomainError):
        t_regions(0, 1)


points = st.complex_numbers(max_magnitude=20, allow_nan=False, allow_infinity=False)
deltas = st.floats(min_value=0.01, max_value=1.55)


@settings(max_examples=200, deadline=None)
@given(points, deltas, st.floats(min_value=0.1, max_value=5))
def test_membership_consistency(t, delta, a):
    r = t_regions(delta, a)
    up, lo = r.upper.contains(t), r.lower.contains(t)
    assert bool(r.in_S1(t)) == (up and lo)
    assert bool(r.in_S2(t)) == (up or lo)
    # conjugation swaps the two half-planes
    assert bool(r.upper.contains(t.conjugate())) == lo
    assert bool(r.lower.contains(t.conjugate())) == up


@settings(max_examples=100, deadline=None)
@given(points, st.floats(min_value=0.02, max_value=1.5), st.floats(min_value=0.01, max_value=0.5))
def test_sr_nesting(t, d_small, gap):
    d_big = min(d_small + gap, 1.55)
    if r_small := t_regions(d_small, 1.0):
        if r_small.in_Sr(t):
            assert t_regions(d_big, 1.0).in_Sr(t)


def test_apex_monotone():
    ds = np.linspace(0.01, 1.5, 50)
    apex = [t_regions(d, 1.0).apex for d in ds]
    assert all(a > b for a, b in zip(apex, apex[1:]))
    assert t_regions(1e-8, 1.0).apex > 1e7


def test_carleman_examples():
    res = carleman_loglog(MDeltaProfile.exponential(math.e, 1, 2))
    assert res.finite and math.isfinite(res.value)
    res = carleman_loglog(MDeltaProfile.constant(math.e ** 2))
    assert res.finite and res.value == pytest.approx(PI / 2 * math.log(2), rel=1e-15)
    d = np.logspace(-4, math.log10(PI / 2), 200)
    res = carleman_loglog(MDeltaProfile.tabulated(d, loglog_M=1 / d))
    assert not res.finite and res.confidence == "high"
    res = carleman_loglog(MDeltaProfile.tabulated(d, log_M=np.exp(2 * np.log(1 / d) + 1)))
    assert res.finite


def test_carleman_exponential_value_against_direct_quadrature():
    from scipy.integrate import quad
    M, b, g = 3.0, 2.0, 1.5
    ref, _ = quad(lambda d: math.log(math.log(M) + b / d ** g), 0, PI / 2, limit=200)
    assert carleman_loglog(MDeltaProfile.exponential(M, b, g)).value == pytest.approx(ref, rel=1e-8)


@settings(max_examples=50, deadline=None)
@given(st.floats(1, 10), st.floats(1, 10), st.floats(1, 10))
def test_carleman_exponential_sweep(M, b, gamma):
    assert carleman_loglog(MDeltaProfile.exponential(M, b, gamma)).finite


def test_profile_preconditions_and_json():
    with pytest.raises(DomainError, match="precondition"):
        MDeltaProfile.tabulated([0.1, 0.2], M=[2.0, 2.0])
    with pytest.raises(DomainError):
        MDeltaProfile.constant(2.0)
    for m in (MDeltaProfile.constant(20.0), MDeltaProfile.exponential(2, 1, 2),
              MDeltaProfile.tabulated([0.1, 0.5], loglog_M=[3.0, 1.0])):
        assert MDeltaProfile.from_json(m.to_json()) == m
    for a in (ADeltaProfile.constant(2.0), ADeltaProfile.power(1.0, 0.5),
              ADeltaProfile.tabulated([0.1, 0.2], [1.0, 2.0])):
        assert ADeltaProfile.from_json(a.to_json()) == a
    with pytest.raises(DomainError):
        ADeltaProfile.from_callable(np.sqrt).to_json()
    assert json.loads(MDeltaProfile.constant(20.0).to_json())["variant"] == "constant"


def test_a_delta_condition():
    assert a_delta_condition(ADeltaProfile.constant(1.0)).holds
    assert not a_delta_condition(ADeltaProfile.power(1.0, 2.0)).holds
    assert a_delta_condition(ADeltaProfile.power(1.0, 0.5)).holds
    assert a_delta_condition(ADeltaProfile.from_callable(np.sqrt)).holds
    assert not a_delta_condition(ADeltaProfile.from_callable(lambda d: d ** 2)).holds
    assert not a_delta_condition(ADeltaProfile.from_callable(np.sin)).holds
    d = np.logspace(-8, 0, 81)
    assert a_delta_condition(ADeltaProfile.tabulated(d, np.sqrt(d))).holds
    assert not a_delta_condition(ADeltaProfile.tabulated(d, d)).holds


def test_log_integral_divergence():
    y = np.linspace(-1000, 1000, 20001)
    exp_decay = np.column_stack([y, np.full_like(y, -1.0)])  # |e^{-z}| on Re z = 1
    assert not log_integral_divergence(exp_decay, 1.0).holds
    linear = np.column_stack([y, -np.abs(y)])
    assert log_integral_divergence(linear, 1.0).holds
    flat = np.column_stack([y, np.zeros_like(y)])
    assert not log_integral_divergence(flat, 1.0).holds
    with pytest.raises(DomainError):
        log_integral_divergence(linear[:5], 1.0)


def test_havin_shift():
    assert havin_shift(1, 2, 1) == 1
    assert havin_shift(PI, 2 * PI, PI) == pytest.approx(1)
    with pytest.raises(DomainError):
        havin_shift(1, 1, 1)


def test_c_inequality():
    y = np.linspace(-20, 20, 401)
    absP = 0.5 * np.exp(-2 * np.abs(y))
    M_h = c_inequality_constant(y, absP, 1.0)
    assert M_h == pytest.approx(0.5)
    assert c_inequality_holds(y, absP, 1.0, 1.01 * M_h)
    assert not c_inequality_holds(y, absP, 1.0, M_h)
