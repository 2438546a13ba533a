"""Borel transform, Pade continuation and Laplace reconstruction.

The summation pipeline for a Gevrey-1 series ``sum p_n / z^(n+1)`` is

1. ``f_n = p_n / n!`` (:func:`borel_transform`),
2. a rational approximant of ``sum f_n t^n`` continues it beyond its disc
   of convergence (:func:`pade_continue`),
3. ``P(z) = int_0^inf F(t) exp(-z t) dt`` is evaluated along a ray
   (:func:`laplace_integral`).

Step 2 is where things go wrong in practice: high-order approximants are
ill-conditioned and may grow spurious poles, so the pole set is always
exposed and poles next to the ray abort the integral.
"""

from __future__ import annotations

import cmath
import json
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DegenerateApproximantError, DomainError, RayObstructedError
from .quadrature import QuadratureConfig, evaluate, integrate_damped
from .sector_geom import HalfPlane
from .series_core import CoefficientSequence

POLE_GUARD = 1e-3
COND_MAX = 1e12


@dataclass(frozen=True)
class BorelCoefficients:
    """Borel coefficients ``f_n`` as floats, with the exact values kept when
    they came from exact input."""

    values: tuple
    exact: tuple | None = None
    radius: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if not self.values:
            raise DomainError("Borel coefficients must be nonempty")
        if self.radius is not None and not self.radius > 0:
            raise DomainError("declared radius must be positive")

    def __len__(self):
        return len(self.values)

    def as_array(self) -> np.ndarray:
        return np.array(self.values)


def borel_transform(p) -> BorelCoefficients:
    """``f_n = p_n / n!`` computed exactly."""
    if not isinstance(p, CoefficientSequence):
        p = CoefficientSequence(tuple(p))
    if len(p) == 0:
        raise DomainError("coefficient sequence must be nonempty")
    exact = tuple(v / math.factorial(n) for n, v in enumerate(p.values))
    return BorelCoefficients(tuple(float(v) for v in exact), exact)


def borel_inverse(f: BorelCoefficients) -> CoefficientSequence:
    """``p_n = f_n n!``; exact when ``f`` carries exact values."""
    src = f.exact if f.exact is not None else [Fraction(v) for v in f.values]
    return CoefficientSequence(tuple(v * math.factorial(n) for n, v in enumerate(src)))


def radius_estimate(f: BorelCoefficients) -> float:
    """Radius of convergence from a fit of ``log|f_n|`` against ``n``.

    Uses the nonzero coefficients in the upper half of the sequence, where
    ``log|f_n| ~ c - n log R``.  A zero tail means a polynomial and returns
    ``inf``; a single nonzero tail entry falls back to the root test.
    """
    if len(f) < 8:
        raise DomainError("radius estimate needs at least 8 coefficients")
    lo = len(f) // 2
    idx = [n for n in range(lo, len(f)) if f.values[n] != 0]
    if not idx:
        return math.inf
    logs = np.array([_log_abs(f, n) for n in idx])
    if len(idx) == 1:
        return math.exp(-logs[0] / idx[0])
    slope, _ = np.polyfit(np.array(idx, dtype=float), logs, 1)
    return math.exp(-slope)


def _log_abs(f, n):
    if f.exact is not None:
        v = f.exact[n]
        return math.log(abs(v.numerator)) - math.log(v.denominator)
    return math.log(abs(f.values[n]))


@dataclass(frozen=True)
class PadeApproximant:
    """The ``[m/n]`` approximant ``N(t/s) / D(t/s)`` with ``D(0) = 1``.

    ``num`` and ``den`` hold ascending coefficients in the scaled variable
    ``u = t/scale``; ``poles`` are in the original variable.
    """

    m: int
    n: int
    scale: float
    num: tuple
    den: tuple
    poles: tuple
    cond: float = 1.0

    def __call__(self, t):
        u = np.asarray(t, dtype=complex) / self.scale
        val = np.polyval(self.num[::-1], u) / np.polyval(self.den[::-1], u)
        return val if val.ndim else complex(val)

    @property
    def orders(self):
        return (self.m, self.n)


def pade_continue(f: BorelCoefficients, m: int, n: int, scale: float | None = None,
                  cond_max: float = COND_MAX) -> PadeApproximant:
    """Rational approximant matching ``f_0 .. f_{m+n}``.

    The variable is scaled by ``scale`` (default: the estimated radius of
    convergence when at least 8 coefficients are given) so the linear
    system is not swamped by the geometric decay of ``f_n``.  A system
    with condition number above ``cond_max`` raises
    :class:`DegenerateApproximantError`; callers step down to
    ``(m-1, n-1)``.
    """
    if m < 0 or n < 0:
        raise DomainError("Pade orders must be nonnegative")
    if m + n + 1 > len(f):
        raise DomainError(f"[{m}/{n}] needs {m + n + 1} coefficients, got {len(f)}")
    if scale is None:
        scale = 1.0
        if len(f) >= 8:
            r = radius_estimate(f)
            if math.isfinite(r) and r > 0:
                scale = r
    c = f.as_array()[: m + n + 1] * scale ** np.arange(m + n + 1)

    def coef(j):
        return c[j] if j >= 0 else 0.0

    if n == 0:
        b = np.array([1.0])
        cond = 1.0
    else:
        A = np.array([[coef(m + j - i) for i in range(1, n + 1)] for j in range(1, n + 1)])
        rhs = -np.array([coef(m + j) for j in range(1, n + 1)])
        cond = float(np.linalg.cond(A)) if np.any(A) else math.inf
        if not cond <= cond_max:
            raise DegenerateApproximantError(
                f"degenerate approximant: [{m}/{n}] system has condition number {cond:.3g}")
        try:
            b = np.concatenate([[1.0], np.linalg.solve(A, rhs)])
        except np.linalg.LinAlgError as exc:
            raise DegenerateApproximantError(f"degenerate approximant: [{m}/{n}]") from exc
    a = np.array([sum(b[i] * c[j - i] for i in range(min(j, n) + 1)) for j in range(m + 1)])
    poles = tuple(complex(r) * scale for r in _roots(b))
    return PadeApproximant(m, n, float(scale), tuple(a), tuple(b), poles, cond)


def _roots(asc):
    asc = np.trim_zeros(np.asarray(asc, dtype=float), "b")
    if len(asc) <= 1:
        return np.array([], dtype=complex)
    return np.roots(asc[::-1])


@dataclass(frozen=True)
class HalfStrip:
    """``D_a ∪ {Re t > 0, |Im t| < a}``."""

    a: float

    def __post_init__(self):
        if not self.a > 0:
            raise DomainError("half-strip width a must be positive")

    def contains(self, t) -> bool:
        t = complex(t)
        return abs(t) < self.a or (t.real > 0 and abs(t.imag) < self.a)


@dataclass(frozen=True)
class RayTransformConfig:
    """Ray angle, decay rate and quadrature settings for ray integrals."""

    theta: float = 0.0
    a: float | None = None
    quad: QuadratureConfig = field(default_factory=QuadratureConfig)

    def __post_init__(self):
        if not abs(self.theta) < 0.5 * math.pi:
            raise DomainError("ray angle must satisfy |theta| < pi/2")
        if self.a is not None and not self.a > 0:
            raise DomainError("decay rate a must be positive")


def _quad_cfg(cfg) -> QuadratureConfig:
    if cfg is None:
        return QuadratureConfig()
    if isinstance(cfg, RayTransformConfig):
        return cfg.quad
    return cfg


def ray_obstruction(poles, phi: float, guard: float = POLE_GUARD):
    """First pole within ``guard * |t|`` of the ray ``arg t = phi``, or ``None``."""
    rot = cmath.exp(-1j * phi)
    for p in poles:
        q = p * rot
        if q == 0 or (q.real > 0 and abs(q.imag) <= guard * q.real):
            return p
    return None


def laplace_integral(F_eval, z, phi: float = 0.0, cfg=None, growth: float = 0.0,
                     full_output: bool = False):
    """``int_0^{inf e^{i phi}} F(t) exp(-z t) dt`` along the ray ``arg t = phi``.

    ``growth`` is an exponential growth rate of ``|F|`` along the ray; the
    integral needs ``Re(z e^{i phi}) > growth``.  If ``F_eval`` has a
    ``poles`` attribute (as :class:`PadeApproximant` does), poles next to
    the ray raise :class:`RayObstructedError`.

    Returns the value, or ``(value, error_estimate)`` with ``full_output``.
    """
    z = complex(z)
    w = cmath.exp(1j * phi)
    lam = (z * w).real
    if not lam > growth:
        raise DomainError(
            f"convergence precondition violated: Re(z e^(i phi)) = {lam:.6g} <= growth {growth:.6g}")
    poles = getattr(F_eval, "poles", None)
    if poles is not None:
        hit = ray_obstruction(poles, phi)
        if hit is not None:
            raise RayObstructedError(f"ray obstructed: pole at {hit:.6g} on arg t = {phi:.6g}")
    osc = (z * w).imag

    def g(r):
        r = np.asarray(r, dtype=float)
        return evaluate(F_eval, r * w) * w * np.exp(-1j * osc * r)

    value, err = integrate_damped(g, lam, _quad_cfg(cfg))
    return (value, err) if full_output else value


@dataclass
class BorelSummation:
    """Result of :func:`borel_sum`.

    ``error`` is an order-stability estimate ``|S[m/n] - S[m'/n']|`` (plus
    quadrature error) against the next lower usable diagonal, not a bound.
    """

    coeffs: CoefficientSequence
    orders: tuple
    phi: float
    value: complex
    error: float
    poles: tuple
    diagnostics: dict = field(default_factory=dict)

    def to_json(self) -> str:
        payload = {
            "value": [self.value.real, self.value.imag],
            "error_estimate": self.error,
            "orders": list(self.orders),
            "ray_angle": self.phi,
            "poles": [[p.real, p.imag] for p in self.poles],
            "diagnostics": self.diagnostics,
            "n_coeffs": len(self.coeffs),
        }
        return json.dumps(payload, indent=2)


def _approximants(f, m, n, tried):
    """Yield usable approximants stepping down the diagonal from ``(m, n)``."""
    while m >= 0 and n >= 0:
        try:
            yield pade_continue(f, m, n)
        except DegenerateApproximantError as exc:
            tried.append({"orders": [m, n], "status": "degenerate", "detail": str(exc)})
        m, n = m - 1, n - 1


def borel_sum(p, z, cfg=None, orders=None, phi: float = 0.0) -> BorelSummation:
    """Borel-Laplace sum of ``sum p_n / z^(n+1)`` at ``z``.

    ``orders=None`` starts from the largest diagonal approximant the
    coefficients allow and steps down past degenerate or ray-obstructed
    ones; explicit ``orders`` propagate those errors instead.
    """
    if not isinstance(p, CoefficientSequence):
        p = CoefficientSequence(tuple(p))
    z = complex(z)
    if z == 0 or not abs(cmath.phase(z)) < 0.5 * math.pi:
        raise DomainError("Borel summation needs |arg z| < pi/2")
    f = borel_transform(p)
    quad = _quad_cfg(cfg)
    tried: list = []
    if orders is not None:
        m, n = orders
        first = pade_continue(f, m, n)
        v1, e1 = laplace_integral(first, z, phi, quad, full_output=True)
    else:
        top = (len(f) - 1) // 2
        candidates = _approximants(f, top, top, tried)
        first = None
        for approx in candidates:
            try:
                v1, e1 = laplace_integral(approx, z, phi, quad, full_output=True)
            except RayObstructedError as exc:
                tried.append({"orders": list(approx.orders), "status": "obstructed",
                              "detail": str(exc)})
                continue
            first = approx
            break
        if first is None:
            raise RayObstructedError("ray obstructed for every usable approximant order")
    tried.append({"orders": list(first.orders), "status": "used", "cond": first.cond})

    ref = None
    for approx in _approximants(f, first.m - 1, first.n - 1, tried):
        try:
            v2, e2 = laplace_integral(approx, z, phi, quad, full_output=True)
        except RayObstructedError:
            continue
        ref = approx
        break
    if ref is None:
        err = e1
    else:
        err = abs(v1 - v2) + max(e1, e2)
        tried.append({"orders": list(ref.orders), "status": "reference", "cond": ref.cond})
    diagnostics = {
        "scheme": quad.scheme,
        "nodes": quad.nodes if quad.scheme == "gauss-laguerre" else None,
        "quadrature_error": e1,
        "scale": first.scale,
        "attempts": tried,
    }
    return BorelSummation(p, first.orders, phi, complex(v1), float(err), first.poles, diagnostics)


def ray_transform(P_sampler, theta: float, t, a: float, cfg=None, full_output: bool = False):
    """``F_theta(t) = int_{arg z = theta} exp(z t) P(z) dz``.

    ``P`` is assumed to decay like ``exp(-a|z|)`` along the ray, which makes
    the integral converge for ``t`` in the half-plane
    ``Re(t) cos(theta) - Im(t) sin(theta) < a``.
    """
    if not abs(theta) < 0.5 * math.pi:
        raise DomainError("ray angle must satisfy |theta| < pi/2")
    h = HalfPlane(theta, a)
    t = complex(t)
    margin = float(h.margin(t))
    if not margin > 0:
        raise DomainError("outside half-plane of convergence")
    w = cmath.exp(1j * theta)
    osc = (t * w).imag

    # exp(z t) P(z) = exp(-margin r) * [exp(i osc r) exp(a r) P(r w)]
    def g(r):
        r = np.asarray(r, dtype=float)
        return evaluate(P_sampler, r * w) * w * np.exp(1j * osc * r + a * r)

    value, err = integrate_damped(g, margin, _quad_cfg(cfg))
    return (value, err) if full_output else value


def ray_transform_bound(theta: float, t, a: float, M: float) -> float:
    """``M / (a - (sigma cos theta - tau sin theta))`` for ``t = sigma + i tau``."""
    margin = float(HalfPlane(theta, a).margin(complex(t)))
    if not margin > 0:
        raise DomainError("outside half-plane of convergence")
    return M / margin


def nevanlinna_check(F_eval, a: float, a_prime: float, sigma: float, K: float, grid) -> bool:
    """Whether ``|F(t)| <= K exp(sigma |t|)`` at every grid point of
    ``D_{a'} ∪ L_{a'}^+``.  Points outside that region are skipped with a
    warning."""
    if not (0 < a_prime < a):
        raise DomainError("need 0 < a' < a")
    if sigma < 0 or not K > 0:
        raise DomainError("need sigma >= 0 and K > 0")
    region = HalfStrip(a_prime)
    pts = []
    skipped = 0
    for t in grid:
        t = complex(t)
        if region.contains(t):
            pts.append(t)
        else:
            skipped += 1
    if skipped:
        warnings.warn(f"{skipped} grid point(s) outside the half-strip skipped", stacklevel=2)
    if not pts:
        return True
    pts = np.array(pts)
    with np.errstate(over="ignore", invalid="ignore"):
        vals = np.abs(evaluate(F_eval, pts))
        ok = vals <= K * np.exp(sigma * np.abs(pts))
    return bool(np.all(ok & np.isfinite(vals)))
