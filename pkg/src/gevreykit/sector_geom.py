"""Sectors, half-planes and the uniqueness-class checkers.

The z-plane side holds :class:`Sector` and the opening/criticality test.
The t-plane side holds the half-planes ``Pi(theta, a) = {sigma cos(theta) -
tau sin(theta) < a}`` (``t = sigma + i tau``) and the regions built from
the pair ``Pi(pi/2 - delta, a)``, ``Pi(-pi/2 + delta, a)``:

* ``S_1`` is their intersection (equal to the left sector ``S_l``),
* ``S_2`` is their union,
* ``S_r`` is the open right sector with apex ``a / sin(delta)`` whose
  closure is the complement of ``S_2``.

All membership predicates are strict; closures have their own predicates.

The checkers at the bottom (:func:`carleman_loglog`,
:func:`a_delta_condition`, :func:`log_integral_divergence`) work on finite
data wherever a closed form is not available.  Deciding divergence of an
improper integral from samples is not possible in general, so they return
a :class:`Verdict`/:class:`LogLogResult` carrying a confidence tag.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import cumulative_trapezoid, quad

from .errors import DomainError

CRITICALITY_TOL = 1e-12
HALF_PI = 0.5 * math.pi


# --------------------------------------------------------------------- z-plane

@dataclass(frozen=True)
class Sector:
    """``S(alpha, beta)`` on the Riemann surface of ``log z``, optionally
    restricted to ``r_min < |z| < r_max``."""

    alpha: float
    beta: float
    r_min: float = 0.0
    r_max: float = math.inf

    def __post_init__(self):
        if not self.alpha < self.beta:
            raise DomainError("sector needs alpha < beta")
        if not (0.0 <= self.r_min < self.r_max):
            raise DomainError("sector needs 0 <= r_min < r_max")

    @property
    def bisector(self) -> float:
        return 0.5 * (self.alpha + self.beta)

    def contains(self, z) -> bool:
        """Strict membership of the point ``z`` of the complex plane.

        For openings above ``2 pi`` a plane point has several preimages on
        the surface; it counts as inside if any of them is.
        """
        z = complex(z)
        r = abs(z)
        if not (self.r_min < r < self.r_max):
            return False
        phi = math.atan2(z.imag, z.real)
        m = math.ceil((self.alpha - phi) / (2 * math.pi))
        shifted = phi + 2 * math.pi * m
        if shifted == self.alpha:
            shifted += 2 * math.pi
        return self.alpha < shifted < self.beta


def opening(s: Sector) -> float:
    return s.beta - s.alpha


def criticality(s: Sector, k: float) -> str:
    """``"critical"`` when the opening equals ``pi/k`` (to 1e-12 rad),
    ``"subcritical"`` below it, ``"supercritical"`` above."""
    if not k > 0:
        raise DomainError("Gevrey order k must be positive")
    diff = opening(s) - math.pi / k
    if abs(diff) <= CRITICALITY_TOL:
        return "critical"
    return "subcritical" if diff < 0 else "supercritical"


# --------------------------------------------------------------------- t-plane

@dataclass(frozen=True)
class HalfPlane:
    """``{t : Re(t) cos(theta) - Im(t) sin(theta) < a}``; contains ``t = 0``."""

    theta: float
    a: float

    def __post_init__(self):
        if not self.a > 0:
            raise DomainError("half-plane offset a must be positive")

    def level(self, t):
        t = np.asarray(t, dtype=complex)
        return t.real * math.cos(self.theta) - t.imag * math.sin(self.theta)

    def margin(self, t):
        """``a - level(t)``; positive exactly inside."""
        return self.a - self.level(t)

    def contains(self, t):
        return self.level(t) < self.a

    def on_boundary(self, t):
        """Membership in the line ``L(theta, a)``."""
        return self.level(t) == self.a

    def closure_contains(self, t):
        return self.level(t) <= self.a


def halfplane_contains(h: HalfPlane, t) -> bool:
    return bool(h.contains(t))


@dataclass(frozen=True)
class TSectorPair:
    """The two half-planes attached to ``delta`` and the regions they cut out."""

    delta: float
    a: float
    apex: float
    upper: HalfPlane = field(repr=False)
    lower: HalfPlane = field(repr=False)

    def in_S1(self, t):
        return self.upper.contains(t) & self.lower.contains(t)

    def in_S2(self, t):
        return self.upper.contains(t) | self.lower.contains(t)

    in_Sl = in_S1

    def in_Sr(self, t):
        return (self.upper.level(t) > self.a) & (self.lower.level(t) > self.a)

    def in_Sr_closure(self, t):
        return ~self.in_S2(t)


def t_regions(delta: float, a: float) -> TSectorPair:
    if not (0.0 < delta < HALF_PI):
        raise DomainError("delta must lie in (0, pi/2)")
    if not a > 0:
        raise DomainError("a must be positive")
    return TSectorPair(
        delta=delta,
        a=a,
        apex=a / math.sin(delta),
        upper=HalfPlane(HALF_PI - delta, a),
        lower=HalfPlane(-HALF_PI + delta, a),
    )


# ------------------------------------------------------------------- profiles

@dataclass(frozen=True)
class MDeltaProfile:
    """The bound ``delta -> M(delta)`` defining a uniqueness class.

    Use the constructors :meth:`constant`, :meth:`exponential` and
    :meth:`tabulated`.  Tabulated profiles store ``log log M`` because
    interesting profiles such as ``exp(exp(1/delta))`` overflow long before
    ``delta`` gets small.
    """

    variant: str
    params: tuple = ()
    delta: tuple = ()
    loglog_values: tuple = ()

    @classmethod
    def constant(cls, M: float) -> MDeltaProfile:
        if not math.log(M) > 1:
            raise DomainError("constant profile needs log M > 1")
        return cls("constant", (float(M),))

    @classmethod
    def exponential(cls, M: float, b: float, gamma: float) -> MDeltaProfile:
        if min(M, b, gamma) <= 0:
            raise DomainError("exponential profile needs M, b, gamma > 0")
        return cls("exponential", (float(M), float(b), float(gamma)))

    @classmethod
    def tabulated(cls, delta, M=None, log_M=None, loglog_M=None) -> MDeltaProfile:
        """Samples ``(delta_i, M_i)``; give exactly one of ``M``, ``log_M``, ``loglog_M``."""
        given = [v is not None for v in (M, log_M, loglog_M)]
        if sum(given) != 1:
            raise DomainError("pass exactly one of M, log_M, loglog_M")
        d = np.asarray(delta, dtype=float)
        if M is not None:
            logm = np.log(np.asarray(M, dtype=float))
        elif log_M is not None:
            logm = np.asarray(log_M, dtype=float)
        else:
            logm = None
        if logm is not None:
            if np.any(logm < 1):
                raise DomainError("precondition violated: log M(delta) < 1 at some sample")
            ll = np.log(logm)
        else:
            ll = np.asarray(loglog_M, dtype=float)
            if np.any(ll < 0):
                raise DomainError("precondition violated: log M(delta) < 1 at some sample")
        if d.shape != ll.shape or d.ndim != 1 or d.size == 0:
            raise DomainError("tabulated profile needs matching 1-d sample arrays")
        if np.any(d <= 0) or np.any(d > HALF_PI):
            raise DomainError("tabulated delta samples must lie in (0, pi/2]")
        order = np.argsort(d)
        return cls("tabulated", (), tuple(d[order]), tuple(ll[order]))

    def loglog(self, delta):
        """``log log M(delta)``.

        Closed-form profiles are normalised so that ``log M >= 1``; raising a
        bound never invalidates the estimate it bounds.
        """
        delta = np.asarray(delta, dtype=float)
        if self.variant == "constant":
            return np.full_like(delta, math.log(math.log(self.params[0])))
        if self.variant == "exponential":
            M, b, gamma = self.params
            # log(log M + b delta^-gamma) without overflowing delta^-gamma
            with np.errstate(divide="ignore"):
                log_main = math.log(b) - gamma * np.log(delta)
                logm = np.logaddexp(log_main, math.log(math.log(M)) if M > 1 else -np.inf)
            return np.maximum(logm, 0.0)
        return np.interp(delta, self.delta, self.loglog_values)

    def to_json(self) -> str:
        if self.variant == "constant":
            payload = {"variant": "constant", "M": self.params[0]}
        elif self.variant == "exponential":
            M, b, gamma = self.params
            payload = {"variant": "exponential", "M": M, "b": b, "gamma": gamma}
        else:
            payload = {"variant": "tabulated", "delta": list(self.delta),
                       "loglog_M": list(self.loglog_values)}
        return json.dumps(payload)

    @classmethod
    def from_json(cls, text: str) -> MDeltaProfile:
        p = json.loads(text)
        variant = p.get("variant")
        if variant == "constant":
            return cls.constant(p["M"])
        if variant == "exponential":
            return cls.exponential(p["M"], p["b"], p["gamma"])
        if variant == "tabulated":
            keys = {k: p[k] for k in ("M", "log_M", "loglog_M") if k in p}
            return cls.tabulated(p["delta"], **keys)
        raise DomainError(f"unknown M(delta) variant {variant!r}")


@dataclass(frozen=True)
class ADeltaProfile:
    """The rate ``delta -> a(delta)``: constant, power law ``c delta^p``,
    tabulated samples, or an arbitrary callable (not serialisable)."""

    variant: str
    params: tuple = ()
    delta: tuple = ()
    values: tuple = ()
    func: object = field(default=None, compare=False, repr=False)

    @classmethod
    def constant(cls, a: float) -> ADeltaProfile:
        if not a > 0:
            raise DomainError("a must be positive")
        return cls("constant", (float(a),))

    @classmethod
    def power(cls, c: float, p: float) -> ADeltaProfile:
        if not c > 0:
            raise DomainError("power-law coefficient must be positive")
        return cls("power", (float(c), float(p)))

    @classmethod
    def tabulated(cls, delta, a) -> ADeltaProfile:
        d = np.asarray(delta, dtype=float)
        v = np.asarray(a, dtype=float)
        if d.size == 0:
            raise DomainError("empty delta grid")
        if d.shape != v.shape or np.any(d <= 0) or np.any(v <= 0):
            raise DomainError("tabulated a(delta) needs matching positive samples")
        order = np.argsort(d)
        return cls("tabulated", (), tuple(d[order]), tuple(v[order]))

    @classmethod
    def from_callable(cls, func, name: str = "callable") -> ADeltaProfile:
        return cls("callable", (name,), func=func)

    def __call__(self, delta):
        delta = np.asarray(delta, dtype=float)
        if self.variant == "constant":
            return np.full_like(delta, self.params[0])
        if self.variant == "power":
            c, p = self.params
            return c * delta ** p
        if self.variant == "tabulated":
            return np.interp(delta, self.delta, self.values)
        return np.asarray(self.func(delta), dtype=float)

    def to_json(self) -> str:
        if self.variant == "constant":
            payload = {"variant": "constant", "a": self.params[0]}
        elif self.variant == "power":
            payload = {"variant": "power", "c": self.params[0], "p": self.params[1]}
        elif self.variant == "tabulated":
            payload = {"variant": "tabulated", "delta": list(self.delta), "a": list(self.values)}
        else:
            raise DomainError("callable a(delta) profiles cannot be serialised")
        return json.dumps(payload)

    @classmethod
    def from_json(cls, text: str) -> ADeltaProfile:
        p = json.loads(text)
        variant = p.get("variant")
        if variant == "constant":
            return cls.constant(p["a"])
        if variant == "power":
            return cls.power(p["c"], p["p"])
        if variant == "tabulated":
            return cls.tabulated(p["delta"], p["a"])
        raise DomainError(f"unknown a(delta) variant {variant!r}")


# ------------------------------------------------------------------- checkers

@dataclass(frozen=True)
class Verdict:
    """Boolean outcome of a numeric criterion plus how much to trust it."""

    holds: bool
    confidence: str
    detail: dict = field(default_factory=dict)

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class LogLogResult:
    finite: bool
    value: float
    confidence: str
    method: str
    detail: dict = field(default_factory=dict)


def carleman_loglog(m: MDeltaProfile, lower: float = 0.0, upper: float = HALF_PI) -> LogLogResult:
    """Finiteness and value of ``int_lower^upper log log M(delta) d delta``.

    Constant and exponential profiles are decided analytically: for
    ``M exp(b/delta^gamma)`` the integrand grows like ``gamma log(1/delta)``,
    which is integrable for every ``gamma > 0``.  Their value comes from
    adaptive quadrature.

    Tabulated profiles are integrated by the trapezoid rule and the
    improper end at ``delta -> 0`` is judged decade by decade: with
    ``D_j`` the contribution of ``[10^j d, 10^(j+1) d]`` (``d`` the
    smallest sample), ``q = D_0 / D_1`` near 1 means the contributions are
    not shrinking (``1/delta`` gives exactly 1) and the integral is flagged
    divergent when ``q >= 0.9``.  Otherwise the tail below the table is
    extrapolated geometrically, ``D_0 q / (1 - q)``.
    """
    if not (0.0 <= lower < upper <= HALF_PI):
        raise DomainError("integration bounds must satisfy 0 <= lower < upper <= pi/2")
    if m.variant == "constant":
        val = (upper - lower) * float(m.loglog(1.0))
        return LogLogResult(True, val, "exact", "closed form")
    if m.variant == "exponential":
        val, err = quad(lambda d: float(m.loglog(d)), lower, upper, limit=200)
        return LogLogResult(True, val, "exact", "analytic finiteness; adaptive quadrature value",
                            {"quad_error": err})
    return _tabulated_loglog(m, lower, upper)


def _tabulated_loglog(m, lower, upper, diverge_at=0.9):
    d = np.asarray(m.delta)
    g = np.asarray(m.loglog_values)
    sel = (d >= lower) & (d <= upper)
    d, g = d[sel], g[sel]
    if d.size < 2:
        raise DomainError("need at least two tabulated samples inside the bounds")
    cum = np.concatenate([[0.0], cumulative_trapezoid(g, d)])
    covered = float(cum[-1])
    d0 = d[0]
    edges = [d0]
    while edges[-1] * 10 <= d[-1] * (1 + 1e-12):
        edges.append(edges[-1] * 10)
    contrib = np.diff(np.interp(np.log(edges), np.log(d), cum))
    detail = {"covered_integral": covered, "smallest_delta": float(d0),
              "decade_contributions": contrib.tolist()}
    if lower > 0 and d0 <= lower * (1 + 1e-12):
        return LogLogResult(True, covered, "high", "trapezoid (proper integral)", detail)
    if contrib.size < 2:
        return LogLogResult(True, covered, "low", "trapezoid; table spans under two decades", detail)
    q = contrib[0] / contrib[1] if contrib[1] != 0 else math.inf
    detail["decade_ratio"] = float(q)
    if q >= diverge_at:
        return LogLogResult(False, math.inf, "high" if contrib.size >= 3 else "medium",
                            "decade extrapolation: contributions not shrinking", detail)
    tail = contrib[0] * q / (1 - q) if q > 0 else 0.0
    detail["extrapolated_tail"] = float(tail)
    if q <= 0.5 and contrib.size >= 3:
        conf = "high"
    elif q < 0.75:
        conf = "medium"
    else:
        conf = "low"
    return LogLogResult(True, covered + tail, conf, "decade extrapolation: geometric tail", detail)


def a_delta_condition(a: ADeltaProfile, min_growth: float = 1.001) -> Verdict:
    """Necessary condition ``a(delta)/delta -> +inf`` as ``delta -> 0``.

    Constant and power-law profiles are decided exactly.  Sampled profiles
    (tabulated, or a callable evaluated on ``logspace(-12, -1)``) are judged
    on their smallest decade: the ratio must grow monotonically as
    ``delta`` decreases, by more than ``min_growth`` per decade.  Slowly
    diverging ratios (``delta^-1e-4``) are missed by design.
    """
    if a.variant == "constant":
        return Verdict(True, "exact", {"reason": "a/delta = const/delta"})
    if a.variant == "power":
        c, p = a.params
        return Verdict(p < 1, "exact", {"reason": f"a/delta ~ delta^{p - 1:g}"})
    if a.variant == "tabulated":
        d = np.asarray(a.delta)
        v = np.asarray(a.values)
    else:
        d = np.logspace(-12, -1, 111)
        v = np.asarray(a(d), dtype=float)
        if np.any(~np.isfinite(v)) or np.any(v <= 0):
            raise DomainError("a(delta) must be finite and positive on the sample grid")
    if d.size == 0:
        raise DomainError("empty delta grid")
    last = d <= 10 * d[0]
    dd, rr = d[last], v[last] / d[last]
    if dd.size < 2:
        return Verdict(False, "insufficient", {"reason": "fewer than two samples in the last decade"})
    monotone = bool(np.all(np.diff(rr) <= 0))
    span = math.log10(dd[-1] / dd[0])
    growth = (rr[0] / rr[-1]) ** (1.0 / span)
    holds = bool(monotone and growth > min_growth)
    return Verdict(holds, "heuristic", {"growth_per_decade": float(growth), "monotone": monotone})


def log_integral_divergence(samples, c: float, threshold: float = -5.0,
                            flatten_ratio: float = 0.75) -> Verdict:
    """Does ``int log|P(c+iy)| / (1 + |c+iy|^2) dy`` run off to ``-inf``?

    ``samples`` are ``(y, log|P(c + iy)|)`` pairs on a grid symmetric about
    ``y = 0``.  With ``I(Y)`` the integral over ``[-Y, Y]`` and
    ``D_j = I(Y/2^j) - I(Y/2^(j+1))`` its change over the last doublings,
    the answer is yes when ``I(Y) < threshold`` and ``D_0 / D_1 >=
    flatten_ratio`` (a convergent ``1/y^2`` tail halves every doubling, a
    logarithmic divergence does not).
    """
    arr = np.asarray(samples, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] < 16:
        raise DomainError("need at least 16 (y, log|P|) samples")
    if not c > 0:
        raise DomainError("c must be positive")
    arr = arr[np.argsort(arr[:, 0])]
    y, logp = arr[:, 0], arr[:, 1]
    w = logp / (1.0 + c * c + y * y)
    cum = np.concatenate([[0.0], cumulative_trapezoid(w, y)])
    Y = min(-y[0], y[-1])
    if not Y > 0:
        raise DomainError("samples must straddle y = 0")

    def trunc(Yj):
        return float(np.interp(Yj, y, cum) - np.interp(-Yj, y, cum))

    levels = [trunc(Y / 2 ** j) for j in range(4)]
    incr = [levels[j] - levels[j + 1] for j in range(3)]
    detail = {"truncated_integral": levels[0], "doubling_increments": incr}
    if incr[0] >= 0 or incr[1] >= 0:
        return Verdict(False, "heuristic", detail)
    ratio = incr[0] / incr[1]
    detail["increment_ratio"] = float(ratio)
    holds = bool(levels[0] < threshold and ratio >= flatten_ratio)
    return Verdict(holds, "heuristic", detail)


def havin_shift(b: float, a: float, c: float) -> float:
    """Abscissa ``h = b / (a - c)`` of the vertical line on which
    ``|P(h + iy)| < M_h exp(-c |y|)`` holds for ``P`` bounded by
    ``M exp(b/delta) exp(-a|z|)``."""
    if not b > 0:
        raise DomainError("b must be positive")
    if not (0 < c < a):
        raise DomainError("need 0 < c < a")
    return b / (a - c)


def c_inequality_constant(y, abs_P, c: float) -> float:
    """Smallest ``M_h`` with ``|P(h+iy)| <= M_h exp(-c|y|)`` on the samples."""
    y = np.asarray(y, dtype=float)
    abs_P = np.asarray(abs_P, dtype=float)
    with np.errstate(over="ignore"):
        return float(np.max(abs_P * np.exp(c * np.abs(y))))


def c_inequality_holds(y, abs_P, c: float, M_h: float) -> bool:
    """Strict ``|P(h+iy)| < M_h exp(-c|y|)`` at every sample."""
    y = np.asarray(y, dtype=float)
    abs_P = np.asarray(abs_P, dtype=float)
    return bool(np.all(abs_P < M_h * np.exp(-c * np.abs(y))))
