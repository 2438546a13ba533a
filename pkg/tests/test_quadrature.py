import math

import numpy as np
import pytest
from scipy.integrate import quad

from gevreykit import DomainError, QuadratureConfig, integrate_damped


@pytest.mark.parametrize("scheme", ["tanh-sinh", "gauss-laguerre"])
@pytest.mark.parametrize("n", [0, 1, 3, 8])
@pytest.mark.parametrize("lam", [1.0, 2.0])
def test_moments(scheme, n, lam):
    cfg = QuadratureConfig(scheme=scheme)
    val, err = integrate_damped(lambda r: r ** n, lam, cfg)
    exact = math.factorial(n) / lam ** (n + 1)
    assert abs(val - exact) <= 1e-13 * exact
    assert err >= 0


def test_non_polynomial_against_scipy():
    ref, _ = quad(lambda t: math.exp(-5 * t) / (1 + t), 0, math.inf, epsabs=1e-15)
    val, _ = integrate_damped(lambda t: 1 / (1 + t), 5.0, QuadratureConfig())
    assert abs(val - ref) < 1e-14


def test_oscillatory_complex_integrand():
    # int exp(-r) exp(3 i r) dr = 1 / (1 - 3i)
    val, _ = integrate_damped(lambda r: np.exp(3j * r), 1.0, QuadratureConfig())
    assert abs(val - 1 / (1 - 3j)) < 1e-13


def test_scalar_only_integrand_falls_back():
    val, _ = integrate_damped(lambda r: math.cos(r), 1.0, QuadratureConfig())
    assert abs(val - 0.5) < 1e-13


def test_errors():
    with pytest.raises(DomainError):
        integrate_damped(lambda r: 1.0, 0.0, QuadratureConfig())
    with pytest.raises(DomainError):
        QuadratureConfig(scheme="simpson")
    with pytest.raises(DomainError):
        QuadratureConfig(tol=0)
    with pytest.raises(DomainError):
        QuadratureConfig(nodes=1)


def test_fixed_radius_and_with():
    cfg = QuadratureConfig().with_(radius=60.0)
    assert cfg.radius == 60.0
    val, _ = integrate_damped(lambda r: 1.0, 1.0, cfg)
    assert abs(val - 1.0) < 1e-14
