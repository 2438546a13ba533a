"""Exact Bernoulli, Binet-Taylor and Stirling coefficients.

Everything here is computed with :class:`fractions.Fraction`, so identities
between the three families hold as exact equalities rather than to a
tolerance.  Two independent routes are used on purpose:

* Bernoulli numbers come from the convolution recurrence
  ``sum_{j=0}^{m} C(m+1, j) B_j = 0`` implied by ``t/(e^t - 1)``.
* Binet-Taylor coefficients come from exact power-series division: the
  reciprocal of ``(e^t - 1)/t`` gives the numerator series of
  ``t**2 * F(t) = t/2 - 1 + t/(e^t - 1)``, which is then shifted by two.

``stirling_coeffs`` multiplies the second route by ``k!`` and asserts that it
agrees with ``B_{2k}/(2k(2k-1))`` from the first.
"""

from __future__ import annotations

import json
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DegenerateSequenceError, DomainError

__all__ = [
    "CoefficientSequence",
    "bernoulli_numbers",
    "binet_taylor_coeffs",
    "stirling_coeffs",
    "bernoulli_asymptotic",
    "gevrey_order_estimate",
    "series_reciprocal",
]

KINDS = ("bernoulli", "binet-taylor", "stirling", "user")


@dataclass(frozen=True)
class CoefficientSequence:
    """An immutable, index-contiguous list of exact rationals.

    ``values[n]`` is the coefficient with index ``n``.  ``kind`` records
    where the numbers came from and selects the invariants checked on
    construction.
    """

    values: tuple
    kind: str = "user"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown coefficient kind {self.kind!r}")
        vals = tuple(Fraction(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if self.kind in ("binet-taylor", "stirling"):
            if any(v != 0 for v in vals[1::2]):
                raise DomainError(f"{self.kind} coefficients must vanish at odd indices")
        elif self.kind == "bernoulli":
            if vals and vals[0] != 1:
                raise DomainError("B_0 must equal 1")
            if any(v != 0 for v in vals[3::2]):
                raise DomainError("odd Bernoulli numbers beyond B_1 must vanish")

    def __len__(self):
        return len(self.values)

    def __getitem__(self, n):
        return self.values[n]

    def __iter__(self):
        return iter(self.values)

    def as_float(self) -> np.ndarray:
        return np.array([float(v) for v in self.values])

    def to_json(self) -> str:
        payload = {
            "kind": self.kind,
            "values": [[str(v.numerator), str(v.denominator)] for v in self.values],
        }
        return json.dumps(payload)

    @classmethod
    def from_json(cls, text: str) -> CoefficientSequence:
        payload = json.loads(text)
        try:
            kind = payload["kind"]
            raw = payload["values"]
        except (KeyError, TypeError) as exc:
            raise DomainError("coefficient JSON needs 'kind' and 'values'") from exc
        values = []
        for item in raw:
            if isinstance(item, (list, tuple)) and len(item) == 2:
                values.append(Fraction(int(item[0]), int(item[1])))
            else:
                # bare numbers and "p/q" strings are accepted for hand-written files
                values.append(Fraction(str(item)))
        return cls(tuple(values), kind)


_BERNOULLI = [Fraction(1)]
_BERNOULLI_LOCK = threading.Lock()


def _bernoulli_table(m_max: int) -> tuple:
    # grown in place, so successive requests never redo earlier entries
    with _BERNOULLI_LOCK:
        B = _BERNOULLI
        for m in range(len(B), m_max + 1):
            if m >= 3 and m % 2 == 1:
                B.append(Fraction(0))
                continue
            # sum_{j=0}^{m} C(m+1, j) B_j = 0, solved for B_m
            s = sum(math.comb(m + 1, j) * B[j] for j in range(m) if B[j])
            B.append(-s / (m + 1))
        return tuple(B[: m_max + 1])


def bernoulli_numbers(n_max: int) -> CoefficientSequence:
    """Bernoulli numbers ``B_0 .. B_{2 n_max}`` as exact rationals.

    Convention: ``t/(e^t - 1) = sum B_j t^j / j!``, so ``B_1 = -1/2``.
    """
    if n_max < 0:
        raise DomainError("n_max must be nonnegative")
    return CoefficientSequence(_bernoulli_table(2 * n_max), "bernoulli")


def series_reciprocal(c, n_terms: int) -> list:
    """First ``n_terms`` coefficients of ``1 / sum c_j x^j`` (needs ``c[0] != 0``)."""
    c = [Fraction(v) for v in c]
    if not c or c[0] == 0:
        raise DomainError("series with zero constant term has no reciprocal")
    inv0 = 1 / c[0]
    out = []
    for n in range(n_terms):
        acc = Fraction(int(n == 0))
        for j in range(1, min(n, len(c) - 1) + 1):
            acc -= c[j] * out[n - j]
        out.append(acc * inv0)
    return out


@lru_cache(maxsize=None)
def _binet_table(n_max: int) -> tuple:
    n_terms = n_max + 3
    # (e^t - 1)/t = sum t^j / (j+1)!
    expm1_over_t = [Fraction(1, math.factorial(j + 1)) for j in range(n_terms)]
    g = series_reciprocal(expm1_over_t, n_terms)  # t/(e^t - 1)
    numer = list(g)
    numer[0] -= 1
    numer[1] += Fraction(1, 2)
    assert numer[0] == 0 and numer[1] == 0, "numerator of t^2 F(t) must vanish to second order"
    return tuple(numer[2:n_max + 3])


def binet_taylor_coeffs(n_max: int) -> CoefficientSequence:
    """Taylor coefficients ``f_0 .. f_{n_max}`` of ``F(t) = (1/2 - 1/t + 1/(e^t-1))/t``."""
    if n_max < 0:
        raise DomainError("n_max must be nonnegative")
    return CoefficientSequence(_binet_table(n_max), "binet-taylor")


def stirling_coeffs(n_max: int) -> CoefficientSequence:
    """Stirling-series coefficients ``p_0 .. p_{n_max}`` with ``p_k = f_k k!``.

    Even entries are checked against ``p_{2k-2} = B_{2k} / (2k (2k-1))``;
    a mismatch is a bug in this module, hence an assertion.
    """
    if n_max < 0:
        raise DomainError("n_max must be nonnegative")
    f = _binet_table(n_max)
    p = [fk * math.factorial(k) for k, fk in enumerate(f)]
    B = _bernoulli_table(n_max + 2)
    for k in range(1, n_max // 2 + 2):
        if 2 * k - 2 > n_max:
            break
        assert p[2 * k - 2] == B[2 * k] / (2 * k * (2 * k - 1)), f"p_{2 * k - 2} disagrees"
    return CoefficientSequence(tuple(p), "stirling")


def bernoulli_asymptotic(n: int) -> float:
    """Leading asymptotic term ``(-1)^n 2 (2n+2)! / (2 pi)^(2n+2)`` of ``B_{2n+2}``.

    Returns signed ``inf`` once the magnitude leaves the double range
    (around ``n = 135``).
    """
    if n < 0:
        raise DomainError("n must be nonnegative")
    sign = -1.0 if n % 2 else 1.0
    log_mag = math.log(2.0) + math.lgamma(2 * n + 3) - (2 * n + 2) * math.log(2 * math.pi)
    if log_mag > 709.78:
        return sign * math.inf
    return sign * math.exp(log_mag)


def gevrey_order_estimate(seq, window=None) -> float:
    """Heuristic Gevrey order of a coefficient sequence.

    Fits ``log|p_n| ~ s n log n + c1 n + c2 log n + c0`` by least squares
    over the nonzero entries of ``window`` (a ``range`` or ``(lo, hi)``
    inclusive pair) and returns ``1/s``, because ``|p_n| ~ (n!)^(1/k) C^n``.
    Sequences without factorial growth (``s <= 1e-6``) return ``inf``.

    This is a diagnostic, not a theorem: lower-order corrections bias ``s``
    on short windows.
    """
    values = list(seq.values) if isinstance(seq, CoefficientSequence) else list(seq)
    if window is None:
        window = range(len(values))
    elif not isinstance(window, range):
        lo, hi = window
        window = range(lo, hi + 1)
    if len(window) < 8:
        raise DomainError("window must contain at least 8 indices")
    if window.stop > len(values):
        raise DomainError("window extends past the end of the sequence")

    idx = [n for n in window if values[n] != 0]
    if not idx:
        raise DegenerateSequenceError("degenerate sequence: window is all zeros")
    if len(idx) < 4:
        raise DegenerateSequenceError("degenerate sequence: too few nonzero entries to fit")
    n = np.array(idx, dtype=float)
    logs = np.array([_log_abs(values[i]) for i in idx])
    logn = np.log(np.maximum(n, 1.0))
    design = np.column_stack([n * logn, n, logn, np.ones_like(n)])
    coef, *_ = np.linalg.lstsq(design, logs, rcond=None)
    slope = coef[0]
    if slope <= 1e-6:
        return math.inf
    return 1.0 / slope


def _log_abs(x) -> float:
    if isinstance(x, Fraction):
        # math.log on ints never overflows, unlike float(x)
        return math.log(abs(x.numerator)) - math.log(x.denominator)
    return math.log(abs(complex(x)))
