"""Remainder bounds, optimal truncation and numeric verification of
Gevrey estimates.

For an expansion ``sum_k p_k / z^(k+1)`` the bound families are

* order 1:  ``K_P M n! / (a^n |z|^(n+1))``
* order k:  ``K_P M (n!)^(1/k) / (k a |z|)^(n+1)``

The two printed forms are not the same family at ``k = 1`` (they differ
by the bounded factor ``a``), so the order-1 form is used whenever
``k == 1`` and the order-k form otherwise.  Factorials go through
``lgamma`` so ``n`` in the hundreds does not overflow.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np
from scipy.special import gammaln

from .errors import DomainError
from .sector_geom import Sector
from .series_core import CoefficientSequence

THREADS_ENV = "GEVREYKIT_THREADS"
SCAN_LIMIT = 5_000_000


@dataclass(frozen=True)
class GevreyExpansion:
    """Coefficients ``p_0, p_1, ...`` together with the constants of their
    estimate family."""

    coeffs: CoefficientSequence
    k: float = 1.0
    M: float = 1.0
    a: float = 1.0
    sigma: float = 0.0
    K_P: float = 1.0

    def __post_init__(self):
        if not isinstance(self.coeffs, CoefficientSequence):
            object.__setattr__(self, "coeffs", CoefficientSequence(tuple(self.coeffs)))
        if not (self.k > 0 and self.M > 0 and self.a > 0 and self.K_P > 0):
            raise DomainError("k, M, a and K_P must be positive")
        if self.sigma < 0:
            raise DomainError("sigma must be nonnegative")

    def scaled(self, c) -> GevreyExpansion:
        """Coefficients and ``M`` multiplied by ``c > 0``."""
        c = Fraction(c)
        if not c > 0:
            raise DomainError("scale factor must be positive")
        return GevreyExpansion(
            CoefficientSequence(tuple(c * p for p in self.coeffs), "user"),
            self.k, float(c) * self.M, self.a, self.sigma, self.K_P)


def _check_z(z):
    z = complex(z)
    if z == 0:
        raise DomainError("z must be nonzero")
    return z


def partial_sum(e: GevreyExpansion, z, n: int, dps: int | None = None):
    """``sum_{k<n} p_k / z^(k+1)`` by Horner's rule in ``w = 1/z``.

    With ``dps`` the sum is formed in mpmath at that many digits from the
    exact coefficients and an ``mpc`` is returned.
    """
    z = _check_z(z)
    if n < 0 or n > len(e.coeffs):
        raise DomainError(f"n must lie in [0, {len(e.coeffs)}]")
    if n == 0:
        return mpmath.mpc(0) if dps else 0j
    coeffs = e.coeffs.values[:n]
    if dps:
        with mpmath.workdps(dps):
            w = 1 / mpmath.mpc(z)
            acc = mpmath.mpc(0)
            for p in reversed(coeffs):
                acc = acc * w + mpmath.mpf(p.numerator) / p.denominator
            return acc * w
    w = 1 / z
    acc = 0j
    for p in reversed(coeffs):
        acc = acc * w + float(p)
    return acc * w


def _log_bound(e: GevreyExpansion, r: float, n: int) -> float:
    lf = math.lgamma(n + 1)
    if e.k == 1:
        return math.log(e.K_P * e.M) + lf - n * math.log(e.a) - (n + 1) * math.log(r)
    return math.log(e.K_P * e.M) + lf / e.k - (n + 1) * math.log(e.k * e.a * r)


def remainder_bound(e: GevreyExpansion, z, n: int) -> float:
    r = abs(complex(z))
    if not r > 0:
        raise DomainError("|z| must be positive")
    if n < 0:
        raise DomainError("n must be nonnegative")
    lb = _log_bound(e, r, n)
    return math.exp(lb) if lb < 709.78 else math.inf


@dataclass(frozen=True)
class Truncation:
    n_opt: int
    bound: float


def optimal_truncation(e: GevreyExpansion, z, n_cap: int | None = None) -> Truncation:
    """Exhaustive scan of ``remainder_bound`` over ``n = 0 .. n_cap``.

    The default cap is ``2 ceil((k a |z|)^k) + 16``, i.e. ``2 ceil(a|z|) + 16``
    for order 1, comfortably past the minimiser of either family.  Caps
    beyond ``SCAN_LIMIT`` (large ``k``) use the convexity of ``log n!``
    instead of the scan; both give the same discrete minimiser.
    """
    r = abs(complex(z))
    if not r > max(e.sigma, 1.0 / e.a):
        raise DomainError("below superasymptotic threshold: need |z| > max(sigma, 1/a)")
    if n_cap is None:
        n_cap = 2 * math.ceil((e.k * e.a * r) ** e.k) + 16
    if n_cap <= SCAN_LIMIT:
        n = np.arange(n_cap + 1)
        logs = _log_bound_array(e, r, n)
        n_opt = int(np.argmin(logs))
    else:
        # log n! is convex, so the minimiser is the first n whose forward
        # difference log(n+1)/k - log(c) is nonnegative
        c = e.a * r if e.k == 1 else e.k * e.a * r
        n_opt = min(n_cap, max(0, math.ceil(c ** e.k) - 1))
    return Truncation(n_opt, math.exp(_log_bound(e, r, n_opt)))


def _log_bound_array(e, r, n):
    lf = gammaln(n + 1.0)
    if e.k == 1:
        return math.log(e.K_P * e.M) + lf - n * math.log(e.a) - (n + 1) * math.log(r)
    return math.log(e.K_P * e.M) + lf / e.k - (n + 1) * math.log(e.k * e.a * r)


def superasymptotic_bound(e: GevreyExpansion, z) -> float:
    """``2 K_P M_a exp(-a|z|)`` with ``M_a = 4 M sqrt(2 pi) a``.

    Bounds the difference of two functions sharing the expansion (hence
    the factor 2).
    """
    r = abs(complex(z))
    if not r > 1.0 / e.a:
        raise DomainError("below superasymptotic threshold: need |z| > 1/a")
    M_a = 4.0 * e.M * math.sqrt(2 * math.pi) * e.a
    return 2.0 * e.K_P * M_a * math.exp(-e.a * r)


# ------------------------------------------------------------------ reports

@dataclass(frozen=True)
class EstimateRow:
    z: complex
    n: int
    remainder: float
    bound: float
    ratio: float
    passed: bool


@dataclass
class EstimateReport:
    """Actual remainder against bound for every checked ``(z, n)``.

    ``passed`` is true when every row passed; skipped grid points do not
    count either way (so a report with every point skipped passes
    vacuously, check ``rows``).
    """

    rows: list = field(default_factory=list)
    skipped: list = field(default_factory=list)
    tolerance: float = 1e-9
    meta: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    @property
    def max_ratio(self) -> float:
        return max((r.ratio for r in self.rows), default=0.0)

    def failures(self):
        return [r for r in self.rows if not r.passed]

    COLUMNS = ("re(z)", "im(z)", "n", "remainder", "bound", "ratio", "pass")

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.COLUMNS)
        for r in self.rows:
            writer.writerow([_g17(r.z.real), _g17(r.z.imag), r.n, _g17(r.remainder),
                             _g17(r.bound), _g17(r.ratio), "true" if r.passed else "false"])
        return buf.getvalue()

    def to_json(self) -> str:
        payload = {
            "passed": self.passed,
            "tolerance": self.tolerance,
            "max_ratio": self.max_ratio,
            "rows": [
                {"re": r.z.real, "im": r.z.imag, "n": r.n, "remainder": r.remainder,
                 "bound": r.bound, "ratio": r.ratio, "pass": r.passed}
                for r in self.rows
            ],
            "skipped": [{"re": complex(z).real, "im": complex(z).imag, "reason": why}
                        for z, why in self.skipped],
            "meta": self.meta,
        }
        return json.dumps(payload, indent=2)


def _g17(x: float) -> str:
    return format(x, ".17g")


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def verify_gevrey(sampler, e: GevreyExpansion, s: Sector, grid, n_max: int,
                  tolerance: float = 1e-9, dps: int | None = None,
                  workers: int | None = None) -> EstimateReport:
    """Compare ``|P(z) - S_n(z)|`` with :func:`remainder_bound` on a grid.

    ``sampler(z)`` returns ``P(z)``.  With ``dps`` the partial sums and the
    subtraction happen in mpmath at that precision, which is needed as soon
    as the bounds drop below ``1e-16 |P|``; ``sampler`` should then return
    an mpmath number.  mpmath precision is process-global, so ``dps`` forces
    serial evaluation.  Otherwise grid points are spread over ``workers``
    threads (default ``$GEVREYKIT_THREADS`` or 1), and ``sampler`` must be
    thread-safe.

    Grid points outside ``s`` or with ``|z| <= sigma`` are reported in
    ``skipped``.
    """
    if tolerance < 0:
        raise DomainError("tolerance must be nonnegative")
    if n_max < 0 or n_max > len(e.coeffs):
        raise DomainError(f"n_max must lie in [0, {len(e.coeffs)}]")
    report = EstimateReport(tolerance=tolerance,
                            meta={"k": e.k, "M": e.M, "a": e.a, "sigma": e.sigma, "K_P": e.K_P,
                                  "sector": [s.alpha, s.beta], "n_max": n_max})
    todo = []
    for z in grid:
        z = complex(z)
        if not s.contains(z):
            report.skipped.append((z, "outside sector"))
        elif not abs(z) > e.sigma:
            report.skipped.append((z, "|z| <= sigma"))
        else:
            todo.append(z)

    def one(z):
        return _rows_at(sampler, e, z, n_max, tolerance, dps)

    if dps or workers == 1 or (workers is None and default_workers() == 1):
        results = [one(z) for z in todo]
    else:
        with ThreadPoolExecutor(max_workers=workers or default_workers()) as pool:
            results = list(pool.map(one, todo))
    for rows in results:
        report.rows.extend(rows)
    return report


def _rows_at(sampler, e, z, n_max, tol, dps):
    rows = []
    coeffs = e.coeffs.values
    if dps:
        with mpmath.workdps(dps):
            P = mpmath.mpmathify(sampler(z))
            w = 1 / mpmath.mpc(z)
            wk = w
            S = mpmath.mpc(0)
            for n in range(n_max + 1):
                rows.append(_row(e, z, n, float(abs(P - S)), tol))
                if n < n_max:
                    p = coeffs[n]
                    S += mpmath.mpf(p.numerator) / p.denominator * wk
                    wk *= w
        return rows
    P = complex(sampler(z))
    w = 1 / z
    wk = w
    S = 0j
    for n in range(n_max + 1):
        rows.append(_row(e, z, n, abs(P - S), tol))
        if n < n_max:
            S += float(coeffs[n]) * wk
            wk *= w
    return rows


def _row(e, z, n, rem, tol):
    bound = remainder_bound(e, z, n)
    ratio = rem / bound if bound > 0 else math.inf
    return EstimateRow(z, n, rem, bound, ratio, bool(ratio <= 1.0 + tol))


# ------------------------------------------------------------ counterexample

@dataclass(frozen=True)
class Counterexample:
    """``P(z) = phi(z) exp(-z) / z`` with the null expansion it satisfies
    in ``S(-pi/2 + delta, pi/2 - delta)``."""

    sampler: object
    expansion: GevreyExpansion
    sector: Sector
    delta: float


def counterexample(phi, delta: float, M: float, n_coeffs: int = 64) -> Counterexample:
    """Build the null-expansion family member for a bounded ``phi``.

    ``phi`` is a callable or a constant and ``M`` any bound for ``|phi|``
    on the sector (``sup |phi|`` is the sharp choice).  The expansion has
    ``n_coeffs`` zero coefficients, ``a = sin(delta)`` and ``k = 1``; the
    estimates hold because ``exp(-x) < n!/x^n`` for ``x > 0``.
    """
    if not (0 < delta < 0.5 * math.pi):
        raise DomainError("delta must lie in (0, pi/2)")
    if not M > 0:
        raise DomainError("the bound M for |phi| must be positive")
    f = phi if callable(phi) else (lambda z, c=complex(phi): c)

    def sampler(z):
        return f(z) * np.exp(-z) / z

    expansion = GevreyExpansion(CoefficientSequence((0,) * n_coeffs), k=1.0, M=float(M),
                                a=math.sin(delta), sigma=0.0)
    sector = Sector(-0.5 * math.pi + delta, 0.5 * math.pi - delta)
    return Counterexample(sampler, expansion, sector, delta)
