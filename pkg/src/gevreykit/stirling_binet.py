"""The Binet function, log Gamma and the Stirling-series error bounds.

``P(z) = ln Gamma(z) - (z - 1/2) ln z + z - (1/2) ln(2 pi)`` is computed as
the Laplace integral of

    F(t) = (1/t) (1/2 - 1/t + 1/(e^t - 1)),

whose poles sit at ``t = 2 pi i k``, ``k != 0``.  Rotating the ray to
``arg t = phi`` extends the integral to ``arg z`` in
``(-pi/2 - phi, pi/2 - phi)``.

Two evaluation paths exist: double precision through
:func:`gevreykit.borel_laplace.laplace_integral`, and an mpmath path
(``BinetConfig(dps=...)``) for checking bounds far below ``1e-16``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache

import mpmath
import numpy as np

from .borel_laplace import laplace_integral
from .errors import DomainError
from .gevrey_engine import (EstimateReport, EstimateRow, GevreyExpansion, partial_sum,
                            verify_gevrey)
from .quadrature import QuadratureConfig
from .sector_geom import Sector
from .series_core import bernoulli_numbers, binet_taylor_coeffs, stirling_coeffs

TWO_PI = 2.0 * math.pi
SERIES_RADIUS = 0.25
ERROR_CONSTANT = 0.94891
CLAIM_SLACK = 1e-12

# even Taylor coefficients f_0, f_2, ..., f_40 of F; at |t| = 1/4 the
# omitted tail is below (1/(8 pi))^42
_F_EVEN = np.array([float(c) for c in binet_taylor_coeffs(40).values[::2]])


@dataclass(frozen=True)
class BinetConfig:
    """Ray and quadrature settings for :func:`binet_P`.

    Attributes
    ----------
    phi : float or None
        Ray angle ``arg t``; ``None`` picks ``-arg(z)/2``.
    quad : QuadratureConfig
        Used by the double-precision path.
    dps : int or None
        Decimal digits for the mpmath path; ``None`` means double precision.
    """

    phi: float | None = None
    quad: QuadratureConfig = field(default_factory=lambda: QuadratureConfig(bound=1.0 / 12))
    dps: int | None = None

    def __post_init__(self):
        if self.phi is not None and not abs(self.phi) < 0.5 * math.pi:
            raise DomainError("rotation angle must satisfy |phi| < pi/2")
        if self.dps is not None and self.dps < 15:
            raise DomainError("dps below 15 gains nothing over double precision")


def _pole_check(t):
    k = np.round(t.imag / TWO_PI)
    at_pole = (k != 0) & (np.abs(t - 1j * TWO_PI * k) <= 1e-14 * np.abs(t))
    if np.any(at_pole):
        raise DomainError("F has a pole at t = 2 pi i k")


def binet_F(t):
    """``F(t) = (1/t)(1/2 - 1/t + 1/(e^t - 1))``, vectorised.

    Inside ``|t| < 1/4`` the even Taylor series is summed instead, which
    removes the cancellation at the removable singularity ``t = 0``.
    """
    arr = np.asarray(t, dtype=complex)
    _pole_check(arr)
    out = np.empty_like(arr)
    small = np.abs(arr) < SERIES_RADIUS
    ts = arr[small]
    out[small] = np.polyval(_F_EVEN[::-1], ts * ts)
    tb = arr[~small]
    with np.errstate(over="ignore"):
        out[~small] = (0.5 - 1.0 / tb + 1.0 / np.expm1(tb)) / tb
    return out if out.ndim else complex(out)


@lru_cache(maxsize=16)
def _mp_even_coeffs(n_terms, prec):
    with mpmath.workprec(prec):
        return tuple(mpmath.mpf(c.numerator) / c.denominator
                     for c in binet_taylor_coeffs(2 * n_terms).values[::2])


def binet_F_mp(t, n_terms: int | None = None):
    """mpmath version of :func:`binet_F` at the working precision."""
    t = mpmath.mpmathify(t)
    if abs(t) < SERIES_RADIUS:
        if n_terms is None:
            # (|t| / 2pi)^(2j) <= 25^(-2j) must beat 10^-dps
            n_terms = int(mpmath.mp.dps / 2.8) + 2
        t2 = t * t
        acc = mpmath.mpf(0)
        for c in reversed(_mp_even_coeffs(n_terms, mpmath.mp.prec)):
            acc = acc * t2 + c
        return acc
    return (mpmath.mpf(1) / 2 - 1 / t + 1 / mpmath.expm1(t)) / t


def _phi_for(z, cfg: BinetConfig) -> float:
    return -0.5 * cmath.phase(z) if cfg.phi is None else cfg.phi


def binet_P(z, cfg: BinetConfig | None = None):
    """``P(z) = int_0^{inf e^{i phi}} exp(-z t) F(t) dt``.

    Needs ``Re(z e^{i phi}) > 0``.  Returns ``complex``, or an mpmath
    ``mpc`` when ``cfg.dps`` is set.
    """
    cfg = cfg or BinetConfig()
    z = complex(z)
    if z == 0:
        raise DomainError("z must be nonzero")
    phi = _phi_for(z, cfg)
    if not (z * cmath.exp(1j * phi)).real > 0:
        raise DomainError("convergence precondition violated: Re(z e^(i phi)) <= 0")
    if cfg.dps:
        return _binet_P_mp(z, phi, cfg.dps)
    return laplace_integral(binet_F, z, phi, cfg.quad)


def _binet_P_mp(z, phi, dps):
    with mpmath.workdps(dps):
        zz = mpmath.mpc(z)
        w = mpmath.expj(phi)
        lam = float((z * cmath.exp(1j * phi)).real)

        def integrand(r):
            t = r * w
            return binet_F_mp(t) * mpmath.exp(-zz * t) * w

        # split so each panel sees roughly constant decay
        scale = 1.0 / lam
        pts = [0, SERIES_RADIUS] + [scale * s for s in (1, 4, 16, 64) if scale * s > SERIES_RADIUS]
        pts.append(mpmath.inf)
        val = mpmath.quad(integrand, pts)
    return val


def K_of_z(z) -> float:
    """``max_{u >= 0} |z^2 / (u^2 + z^2)|``: 1 for ``|arg z| <= pi/4``,
    ``1/sin(2|arg z|)`` beyond, ``inf`` at the imaginary axis."""
    z = complex(z)
    if z == 0:
        raise DomainError("z must be nonzero")
    th = abs(cmath.phase(z))
    if not th < 0.5 * math.pi:
        raise DomainError("K(z) needs |arg z| < pi/2")
    if th <= 0.25 * math.pi:
        return 1.0
    s = math.sin(2.0 * th)
    return 1.0 / s if s > 0 else math.inf


def log_gamma(z, cfg: BinetConfig | None = None):
    """``ln Gamma(z)`` from the Binet function.

    Small arguments are first shifted up with
    ``ln Gamma(z) = ln Gamma(z + 1) - ln z`` until ``|z| >= 2``, which
    needs ``Re z > 0`` for those arguments.
    """
    cfg = cfg or BinetConfig()
    z = complex(z)
    if z == 0:
        raise DomainError("ln Gamma has a pole at 0")
    if abs(z) < 2 and not z.real > 0:
        raise DomainError("argument recurrence needs Re z > 0 for |z| < 2")
    if cfg.dps:
        with mpmath.workdps(cfg.dps):
            zz = mpmath.mpc(z)
            shift = mpmath.mpc(0)
            while abs(zz) < 2:
                shift += mpmath.log(zz)
                zz += 1
            P = binet_P(complex(zz), cfg)
            return ((zz - 0.5) * mpmath.log(zz) - zz + mpmath.log(2 * mpmath.pi) / 2 + P
                    - shift)
    shift = 0j
    while abs(z) < 2:
        shift += cmath.log(z)
        z += 1
    P = binet_P(z, cfg)
    return (z - 0.5) * cmath.log(z) - z + 0.5 * math.log(TWO_PI) + P - shift


# ------------------------------------------------------------ error bounds

def stirling_expansion(n_max: int = 40, M: float = 1.0 / 12, a: float = TWO_PI) -> GevreyExpansion:
    """The Stirling coefficients packaged as an order-1 Gevrey expansion."""
    return GevreyExpansion(stirling_coeffs(n_max), k=1.0, M=M, a=a)


def stirling_term_bound(z, n: int) -> float:
    """``K(z) |B_{2n+2}| / ((2n+2)(2n+1)|z|^{2n+1})``: the bound after the
    first ``n`` nonzero terms.  ``n = 0`` gives ``K(z)/(12|z|)``."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    K = K_of_z(z)
    if math.isinf(K):
        return math.inf
    B = bernoulli_numbers(n + 1).values[2 * n + 2]
    log_b = (math.log(abs(B.numerator)) - math.log(B.denominator)
             - math.log((2 * n + 2) * (2 * n + 1)) - (2 * n + 1) * math.log(abs(complex(z))))
    return K * math.exp(log_b) if log_b < 709.78 else math.inf


def stirling_sum(z, n: int, dps: int | None = None):
    """``sum_{k=1}^{n} p_{2k-2} / z^(2k-1)``: the first ``n`` nonzero terms."""
    e = stirling_expansion(max(2 * n - 1, 0))
    return partial_sum(e, z, max(2 * n - 1, 0), dps=dps)


@dataclass(frozen=True)
class StirlingOptimum:
    n_opt: int
    bound: float
    K: float


def optimal_error_stirling(z) -> StirlingOptimum:
    """``n_opt = floor(pi|z| - 1)`` and the closed-form error bound
    ``K(z) 2 sqrt(2 pi |z|) / (2 pi |z| - 1) exp(-2 pi |z|)``.

    For ``|z| > 1`` and ``|arg z| < pi/4`` the bound is also checked
    against ``0.94891 exp(-2 pi |z|)``; a violation raises
    ``AssertionError``.
    """
    z = complex(z)
    r = abs(z)
    if not r > 1.0 / TWO_PI:
        raise DomainError("need |z| > 1/(2 pi)")
    K = K_of_z(z)
    n_opt = max(0, math.floor(math.pi * r - 1.0))
    bound = K * 2.0 * math.sqrt(TWO_PI * r) / (TWO_PI * r - 1.0) * math.exp(-TWO_PI * r)
    if r > 1 and abs(cmath.phase(z)) < 0.25 * math.pi:
        claim = ERROR_CONSTANT * math.exp(-TWO_PI * r)
        if not bound <= claim + CLAIM_SLACK:
            raise AssertionError(f"bound {bound:.6g} exceeds {ERROR_CONSTANT} e^(-2 pi |z|)")
    return StirlingOptimum(n_opt, bound, K)


def stirling_bound_scan(z, n_cap: int | None = None) -> tuple:
    """Brute-force argmin over ``n <= n_cap`` of :func:`stirling_term_bound`.

    Returns ``(n_min, bound_min)``.
    """
    r = abs(complex(z))
    if n_cap is None:
        n_cap = 2 * math.ceil(math.pi * r) + 16
    bounds = [stirling_term_bound(z, n) for n in range(n_cap + 1)]
    n_min = int(np.argmin(bounds))
    return n_min, bounds[n_min]


def _auto_dps(z, n_max) -> int | None:
    # the smallest bound we will compare against, relative to |P| ~ 1/(12|z|)
    r = abs(complex(z))
    n_min, b = stirling_bound_scan(z, n_max)
    rel = b * 12 * r
    if rel > 1e-11:
        return None
    return int(-math.log10(max(rel, 1e-300))) + 25


def verify_estimates_st(grid, n_max: int, tolerance: float = 1e-9,
                        dps: int | None = None, cfg: BinetConfig | None = None) -> EstimateReport:
    """Check ``|P(z) - sum_{k=1}^n p_{2k-2}/z^(2k-1)| <= stirling_term_bound(z, n)``
    for ``n = 0 .. n_max`` at each grid point.

    Rows carry ``n`` in the counting of nonzero terms.  The precision is
    raised automatically (mpmath) when the bounds fall below what double
    precision can resolve; pass ``dps`` to force it.  Points with
    ``|arg z| >= pi/2`` are skipped.
    """
    cfg = cfg or BinetConfig()
    report = EstimateReport(tolerance=tolerance, meta={"family": "stirling", "n_max": n_max})
    coeffs = stirling_coeffs(max(2 * n_max, 1)).values
    for z in grid:
        z = complex(z)
        if z == 0 or not abs(cmath.phase(z)) < 0.5 * math.pi:
            report.skipped.append((z, "outside S(-pi/2, pi/2)"))
            continue
        d = dps if dps is not None else _auto_dps(z, n_max)
        with mpmath.workdps(d or 15):
            if d:
                P = binet_P(z, BinetConfig(phi=cfg.phi, quad=cfg.quad, dps=d))
                w = 1 / mpmath.mpc(z)
            else:
                P = binet_P(z, cfg)
                w = 1 / z
            w2 = w * w
            wk = w
            S = 0
            for n in range(n_max + 1):
                rem = float(abs(P - S))
                bound = stirling_term_bound(z, n)
                ratio = rem / bound if bound > 0 else math.inf
                report.rows.append(EstimateRow(z, n, rem, bound, ratio, bool(ratio <= 1 + tolerance)))
                p = coeffs[2 * n]
                S = S + (mpmath.mpf(p.numerator) / p.denominator if d else float(p)) * wk
                wk = wk * w2
    return report


# ------------------------------------------------------------ widened sector

def widened_sector_rate(epsilon: float) -> float:
    """``a(eps) = 2 pi cos(eps)``."""
    if not 0 < epsilon < 0.5 * math.pi:
        raise DomainError("epsilon must lie in (0, pi/2)")
    return TWO_PI * math.cos(epsilon)


@dataclass
class WidenedSectorCheck:
    """Result of :func:`verify_widened_sector`.

    ``M_fit`` is the smallest ``M`` making every calibration-shell ratio at
    most 1; the report checks the target grid with that ``M``.
    """

    epsilon: float
    a: float
    M_fit: float
    report: EstimateReport

    @property
    def passed(self) -> bool:
        return self.report.passed and bool(self.report.rows)


def verify_widened_sector(epsilon: float, radius: float = 8.0, n_max: int = 10,
                          margin: float = 1e-2, n_points: int = 5,
                          tolerance: float = 1e-9, dps: int = 40,
                          phi: float | None = None) -> WidenedSectorCheck:
    """Gevrey estimates beyond the imaginary axis via a rotated contour.

    Rotating the ray to ``arg t = -epsilon`` continues the Binet integral
    to ``arg z < pi/2 + epsilon``.  Every ray with ``|arg t| < pi/2`` gives
    the same ``P`` wherever it converges, so by default each point is
    evaluated on the better-damped ray ``arg t = -arg(z)/2``; pass
    ``phi=-epsilon`` to integrate on the rotated ray itself (much slower,
    since its damping ``|z| sin(eps/2)`` is weak).

    No constant ``M`` is known there, so it is fitted on a calibration
    shell at half the target radius and then tested on ``n_points`` points
    at ``|z| = radius``, arguments spread over ``[pi/2, pi/2 + epsilon/2]``,
    with ``a = (1 - margin) 2 pi cos(eps)``.
    """
    a = (1.0 - margin) * widened_sector_rate(epsilon)
    cfg = BinetConfig(phi=phi, dps=dps)
    top = 0.5 * math.pi + 0.5 * epsilon
    args = np.linspace(0.5 * math.pi, top, n_points)
    sector = Sector(-0.5 * math.pi, top + 1e-12)

    def sampler(z):
        return binet_P(z, cfg)

    probe = GevreyExpansion(stirling_coeffs(n_max), k=1.0, M=1.0, a=a)
    shell = [0.5 * radius * cmath.exp(1j * t) for t in args]
    calib = verify_gevrey(sampler, probe, sector, shell, n_max, tolerance, dps=dps)
    M_fit = max(calib.max_ratio, 1e-300)
    e = GevreyExpansion(stirling_coeffs(n_max), k=1.0, M=M_fit, a=a)
    grid = [radius * cmath.exp(1j * t) for t in args]
    report = verify_gevrey(sampler, e, sector, grid, n_max, tolerance, dps=dps)
    report.meta.update({"epsilon": epsilon, "phi": phi, "M_fit": M_fit,
                        "calibration_radius": 0.5 * radius})
    return WidenedSectorCheck(epsilon, a, M_fit, report)
