import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gevreykit import (BorelCoefficients, CoefficientSequence, DomainError, HalfStrip,
                       RayObstructedError, RayTransformConfig, binet_F, binet_P,
                       binet_taylor_coeffs, borel_inverse, borel_sum, borel_transform,
                       laplace_integral, nevanlinna_check, pade_continue, radius_estimate,
                       ray_transform, ray_transform_bound, stirling_coeffs)
from gevreykit.errors import DegenerateApproximantError

from conftest import stieltjes_oracle

PI = math.pi
EULER = CoefficientSequence(tuple((-1) ** n * math.factorial(n) for n in range(21)))


def exp_minus(z):
    return np.exp(-np.asarray(z, dtype=complex))


# ------------------------------------------------------------ transform

def test_transform_examples():
    assert borel_transform(stirling_coeffs(30)).exact == binet_taylor_coeffs(30).values
    f = borel_transform(EULER)
    assert f.values == tuple(float((-1) ** n) for n in range(21))
    assert borel_transform([1]).values == (1.0,)
    with pytest.raises(DomainError):
        borel_transform([])


@settings(max_examples=50, deadline=None)
@given(st.lists(st.fractions(max_denominator=10 ** 6), min_size=1, max_size=25))
def test_transform_round_trip_exact(vals):
    p = CoefficientSequence(tuple(vals))
    assert borel_inverse(borel_transform(p)).values == p.values


def test_declared_radius_must_be_positive():
    with pytest.raises(DomainError):
        BorelCoefficients((1.0,), radius=0)


# ------------------------------------------------------------ radius

def test_radius_examples():
    r = radius_estimate(borel_transform(stirling_coeffs(39)))
    assert abs(r / (2 * PI) - 1) < 0.05
    assert radius_estimate(BorelCoefficients([(-1) ** n for n in range(20)])) == pytest.approx(1)
    assert radius_estimate(BorelCoefficients([2.0 ** -n for n in range(20)])) == pytest.approx(2)
    assert radius_estimate(BorelCoefficients([1, 2, 3] + [0] * 10)) == math.inf
    with pytest.raises(DomainError):
        radius_estimate(BorelCoefficients([1.0] * 7))


@settings(max_examples=30, deadline=None)
@given(st.floats(0.2, 20), st.floats(0.1, 10))
def test_radius_of_geometric_sequence(R, c):
    f = BorelCoefficients([c * R ** -n for n in range(16)])
    assert radius_estimate(f) == pytest.approx(R, rel=1e-9)


# ------------------------------------------------------------ Pade

def test_pade_examples():
    g = pade_continue(BorelCoefficients([(-1) ** n for n in range(10)]), 0, 1, scale=1.0)
    for t in (0.3, 2.0, -0.5 + 1j, 7j):
        assert g(t) == pytest.approx(1 / (1 + t), rel=1e-14)
    assert len(g.poles) == 1 and g.poles[0] == pytest.approx(-1, abs=1e-14)
    c = pade_continue(BorelCoefficients([1.0]), 0, 0)
    assert c(3 + 4j) == 1 and c.poles == ()


def test_pade_binet_poles_near_two_pi_i():
    f = borel_transform(stirling_coeffs(39))
    g = pade_continue(f, 8, 8)
    nearest = sorted(g.poles, key=abs)[:2]
    targets = sorted([2j * PI, -2j * PI], key=lambda q: q.imag)
    for p, q in zip(sorted(nearest, key=lambda q: q.imag), targets):
        assert abs(p - q) / abs(q) < 0.05


def test_pade_reproduces_rational_function():
    rng = np.random.default_rng(7)
    m, n = 3, 2
    num = rng.uniform(-1, 1, m + 1)
    den = np.concatenate([[1.0], rng.uniform(-0.3, 0.3, n)])
    # Taylor coefficients of num/den by long division
    N = m + n + 1
    c = np.zeros(N)
    for j in range(N):
        acc = num[j] if j <= m else 0.0
        acc -= sum(den[i] * c[j - i] for i in range(1, min(j, n) + 1))
        c[j] = acc
    g = pade_continue(BorelCoefficients(c), m, n, scale=1.0)
    r = min(abs(np.roots(den[::-1])))
    pts = 0.9 * r * np.sqrt(rng.uniform(0, 1, 20)) * np.exp(2j * PI * rng.uniform(0, 1, 20))
    exact = np.polyval(num[::-1], pts) / np.polyval(den[::-1], pts)
    assert np.max(np.abs(g(pts) - exact)) < 1e-12


def test_pade_degenerate_and_order_errors():
    # odd orders of an even function give a singular system
    f = borel_transform(stirling_coeffs(39))
    with pytest.raises(DegenerateApproximantError, match="degenerate approximant"):
        pade_continue(f, 7, 7)
    with pytest.raises(DegenerateApproximantError):
        pade_continue(BorelCoefficients([1.0, 0.0, 0.0, 0.0]), 1, 1)
    with pytest.raises(DomainError):
        pade_continue(BorelCoefficients([1.0, 2.0]), 1, 1)


# ------------------------------------------------------------ Laplace

def test_laplace_examples():
    assert laplace_integral(lambda t: 1.0, 2) == pytest.approx(0.5, rel=1e-14)
    assert laplace_integral(lambda t: t ** 3, 1) == pytest.approx(6, rel=1e-13)
    v = laplace_integral(lambda t: 1 / (1 + t), 5)
    assert abs(v - stieltjes_oracle(5)) < 1e-8
    assert v.real == pytest.approx(0.1704, abs=1e-4)


@pytest.mark.parametrize("z", [1, 2, 1 + 1j])
@pytest.mark.parametrize("n", range(9))
def test_termwise_laplace_identity(n, z):
    v = laplace_integral(lambda t: t ** n, z)
    exact = math.factorial(n) / z ** (n + 1)
    assert abs(v - exact) <= 1e-12 * abs(exact)


def test_laplace_rotated_ray_and_schemes():
    F = lambda t: 1 / (1 + t)
    ref = laplace_integral(F, 5)
    assert laplace_integral(F, 5, phi=0.4) == pytest.approx(ref, abs=1e-13)
    gl = RayTransformConfig(quad=RayTransformConfig().quad.with_(scheme="gauss-laguerre"))
    assert laplace_integral(F, 5, cfg=gl) == pytest.approx(ref, abs=1e-12)


def test_laplace_errors():
    with pytest.raises(DomainError, match="convergence precondition"):
        laplace_integral(lambda t: 1.0, -1)
    with pytest.raises(DomainError):
        laplace_integral(lambda t: np.exp(t), 0.5, growth=1.0)
    g = pade_continue(BorelCoefficients([(-1) ** n for n in range(10)]), 0, 1, scale=1.0)
    with pytest.raises(RayObstructedError, match="ray obstructed"):
        laplace_integral(g, -5, phi=PI)  # pole -1 sits on arg t = pi
    # near miss outside the guard is fine
    assert laplace_integral(g, 5, phi=0.0) == pytest.approx(stieltjes_oracle(5), abs=1e-12)


def test_ray_config_invariants():
    with pytest.raises(DomainError):
        RayTransformConfig(theta=PI / 2)
    with pytest.raises(DomainError):
        RayTransformConfig(a=-1)
    with pytest.raises(DomainError):
        HalfStrip(0)
    h = HalfStrip(2)
    assert h.contains(1.5j) and h.contains(100 + 1.9j)
    assert not h.contains(-1 + 1.9j) and not h.contains(3j)


# ------------------------------------------------------------ borel_sum

def test_borel_sum_euler():
    s = borel_sum(EULER, 5)
    assert abs(s.value - stieltjes_oracle(5)) < 1e-6
    assert s.error >= 0


@pytest.mark.parametrize("z", [5, 10])
def test_borel_sum_stirling_matches_binet(z, oracle_P):
    s = borel_sum(stirling_coeffs(39), z)
    assert abs(s.value - binet_P(z)) < 1e-8
    assert abs(s.value - complex(oracle_P(z))) < 1e-8
    assert s.error >= 0


def test_borel_sum_single_term():
    for c, z in [(3, 2), (-1.5, 4 + 1j)]:
        assert borel_sum([c], z).value == pytest.approx(c / z, rel=1e-13)


def test_borel_sum_domain_and_propagation():
    with pytest.raises(DomainError):
        borel_sum(EULER, -1)
    with pytest.raises(DomainError):
        borel_sum(EULER, 3j)
    with pytest.raises(DegenerateApproximantError):
        borel_sum(stirling_coeffs(39), 10, orders=(7, 7))


def test_borel_sum_json_carries_diagnostics():
    s = borel_sum(stirling_coeffs(39), 10)
    d = json.loads(s.to_json())
    assert d["value"][0] == s.value.real
    assert len(d["poles"]) == s.orders[1]
    assert d["error_estimate"] >= 0
    assert any(a["status"] == "used" for a in d["diagnostics"]["attempts"])


def test_borel_sum_in_lower_half_plane_is_conjugate():
    a = borel_sum(stirling_coeffs(39), 6 + 2j).value
    b = borel_sum(stirling_coeffs(39), 6 - 2j).value
    assert a == pytest.approx(b.conjugate(), abs=1e-13)


# ------------------------------------------------------------ ray transform

def test_ray_transform_examples():
    assert ray_transform(exp_minus, 0, 0, 1) == pytest.approx(1, rel=1e-13)
    assert ray_transform(exp_minus, 0, 0.5, 1) == pytest.approx(2, rel=1e-12)
    for t in (-2.0, 0.9, 0.3 + 0.4j):
        assert ray_transform(exp_minus, 0, t, 1) == pytest.approx(1 / (1 - t), rel=1e-10)
    with pytest.raises(DomainError, match="outside half-plane"):
        ray_transform(exp_minus, 0, 1.0, 1)


@pytest.mark.parametrize("delta", [PI / 6, PI / 4, PI / 3])
def test_ray_independence_and_bound(delta):
    a = math.sin(delta)
    th = PI / 2 - delta
    pts = [0, 0.3 * a, -0.5, 0.2 * a + 0.1j, -1 - 0.4j]
    for t in pts:
        up = ray_transform(exp_minus, th, t, a)
        down = ray_transform(exp_minus, -th, t, a)
        assert abs(up - down) < 1e-8
        assert up == pytest.approx(1 / (1 - t), rel=1e-10)
        for s in (th, -th):
            assert abs(ray_transform(exp_minus, s, t, a)) <= ray_transform_bound(s, t, a, 1.0)


def test_ray_transform_bound_formula():
    t = 0.2 - 0.3j
    expected = 2.0 / (1.5 - (0.2 * math.cos(0.4) + 0.3 * math.sin(0.4)))
    assert ray_transform_bound(0.4, t, 1.5, 2.0) == pytest.approx(expected)


# ------------------------------------------------------------ Nevanlinna

def halfstrip_grid(a, R=50, n=400, seed=0):
    rng = np.random.default_rng(seed)
    re = rng.uniform(0, R, n)
    im = rng.uniform(-a, a, n) * 0.999
    disc = 0.999 * a * np.sqrt(rng.uniform(0, 1, 100)) * np.exp(2j * PI * rng.uniform(0, 1, 100))
    return np.concatenate([re + 1j * im, disc])


def test_nevanlinna_examples():
    assert nevanlinna_check(binet_F, 2 * PI, 5, 0.01, 1, halfstrip_grid(5))
    grid = np.linspace(0, 10, 50)
    assert not nevanlinna_check(lambda t: np.exp(t * t), 2, 1, 0.5, 10, grid)
    assert nevanlinna_check(lambda t: 0 * t, 2, 1, 0, 1, halfstrip_grid(1))


def test_nevanlinna_skips_outside_points():
    with pytest.warns(UserWarning, match="skipped"):
        ok = nevanlinna_check(lambda t: 0 * t, 2, 1, 0, 1, [0.5, -3 + 0j, 5j])
    assert ok
    with pytest.raises(DomainError):
        nevanlinna_check(binet_F, 1, 2, 0, 1, [0.1])
