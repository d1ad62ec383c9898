"""Gamma-family primitives and generalized Laguerre polynomials.

Everything that touches a ratio of Gamma functions goes through log space,
so that Pochhammer ratios with indices up to ~1e6 neither overflow nor
underflow.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, zetac

from .report import VerificationReport, check_leq, combine

LAGUERRE_MAX_DEGREE = 10_000
GAUTSCHI_GUARD = 1e-13


@dataclass(frozen=True)
class PochhammerValue:
    """``(z)_a = Gamma(z+a)/Gamma(z)`` stored as ``sign * exp(log_abs)``."""

    log_abs: float
    sign: int = 1

    @property
    def value(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_abs)

    def __float__(self) -> float:
        return self.value

    def __mul__(self, other: PochhammerValue) -> PochhammerValue:
        return PochhammerValue(self.log_abs + other.log_abs, self.sign * other.sign)

    def __truediv__(self, other: PochhammerValue) -> PochhammerValue:
        if other.sign == 0:
            raise ZeroDivisionError("division by a vanishing Pochhammer symbol")
        return PochhammerValue(self.log_abs - other.log_abs, self.sign * other.sign)


# zeta(k) - 1 for k = 2..60, for the series of ln Gamma(1 + e)
_ZETA_M1 = zetac(np.arange(2, 61, dtype=float))
_EULER_GAMMA = 0.57721566490153286061


def _log_gamma_near_one(e: float) -> float:
    # ln Gamma(1+e) = -log1p(e) + e (1 - gamma) + sum_k (-1)^k (zeta(k) - 1) e^k / k, |e| <= 1/2
    total = 0.0
    power = -e
    terms = []
    for k, z in enumerate(_ZETA_M1, start=2):
        power *= -e
        term = z * power / k
        terms.append(term)
        if abs(term) < 1e-18 * abs(e):
            break
    for term in reversed(terms):
        total += term
    return total + e * (1.0 - _EULER_GAMMA) - math.log1p(e)


def log_gamma(x: float) -> float:
    """``ln Gamma(x)`` for ``x > 0``.

    On [0.5, 2.5], around the zeros at 1 and 2, a power series keeps the
    relative error near machine precision; elsewhere libm's ``lgamma``.
    """
    if not x > 0:
        raise ValueError(f"log_gamma needs x > 0, got {x!r}")
    if 0.5 <= x <= 1.5:
        return _log_gamma_near_one(x - 1.0)
    if 1.5 < x <= 2.5:
        e = x - 2.0
        return math.log1p(e) + _log_gamma_near_one(e)
    return math.lgamma(x)


def pochhammer(z: float, a: float) -> PochhammerValue:
    if not z > 0:
        raise ValueError(f"pochhammer needs z > 0, got z={z!r}")
    if not z + a > 0:
        raise ValueError(f"pochhammer needs z + a > 0, got z={z!r}, a={a!r}")
    if a == 0:
        return PochhammerValue(0.0, 1)
    return PochhammerValue(log_gamma(z + a) - log_gamma(z), 1)


def log_pochhammer(z, a):
    """Vectorized ``ln (z)_a`` for positive arguments (no sign tracking)."""
    z = np.asarray(z, dtype=float)
    a = np.asarray(a, dtype=float)
    if np.any(z <= 0) or np.any(z + a <= 0):
        raise ValueError("log_pochhammer needs z > 0 and z + a > 0")
    return np.where(a == 0, 0.0, gammaln(z + a) - gammaln(z))


def laguerre(n: int, alpha: float, t):
    """Generalized Laguerre polynomial ``L_n^alpha(t)`` by upward recurrence.

    Accepts scalar or array ``t``; returns the same shape.
    """
    if n < 0:
        raise ValueError("laguerre degree must be non-negative")
    if n > LAGUERRE_MAX_DEGREE:
        raise ValueError(f"laguerre degree {n} exceeds {LAGUERRE_MAX_DEGREE}")
    if not alpha > -1:
        raise ValueError("laguerre needs alpha > -1")
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0):
        raise ValueError("laguerre is only supported for t >= 0")
    prev = np.ones_like(t_arr)
    if n == 0:
        return prev if t_arr.ndim else float(prev)
    cur = 1.0 + alpha - t_arr
    for k in range(1, n):
        # (k+1) L_{k+1} = (2k+1+alpha-t) L_k - (k+alpha) L_{k-1}
        prev, cur = cur, ((2 * k + 1 + alpha - t_arr) * cur - (k + alpha) * prev) / (k + 1)
    return cur if t_arr.ndim else float(cur)


def gautschi_check(x, s) -> VerificationReport:
    """Check ``(x+1)^(s-1) <= Gamma(x+s)/Gamma(x+1) < x^(s-1)``.

    *x* and *s* broadcast against each other. The right-hand inequality is
    strict; at ``s in {0, 1}`` it degenerates to an identity, and such points
    (and any other margin inside the 1e-13 guard band) come back as
    inconclusive rather than failed.
    """
    x, s = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(s, dtype=float))
    if np.any(x <= 0) or np.any((s < 0) | (s > 1)):
        raise ValueError("gautschi_check needs x > 0 and 0 <= s <= 1")
    x = x.ravel()
    s = s.ravel()
    ratio = np.exp(gammaln(x + s) - gammaln(x + 1))
    lower = (x + 1) ** (s - 1)
    upper = x ** (s - 1)

    def label(i):
        return f"x={x[i]:.6g}, s={s[i]:.6g}"

    left = check_leq("gautschi lower", lower, ratio, abs_tol=GAUTSCHI_GUARD, labels=label)
    right = check_leq("gautschi upper", ratio, upper, strict=True, abs_tol=GAUTSCHI_GUARD, labels=label)
    details = {}
    if x.size == 1:
        details = {"lower": float(lower[0]), "middle": float(ratio[0]), "upper": float(upper[0])}
    return combine("gautschi", [left, right], **details)


def gautschi_grid() -> tuple[np.ndarray, np.ndarray]:
    """Default sweep: x = 0.1, 0.2, ..., 100 against s in {0, 1/4, 1/2, 3/4, 1}."""
    xs = np.arange(1, 1001) / 10.0
    ss = np.array([0.0, 0.25, 0.5, 0.75, 1.0])
    return np.meshgrid(xs, ss, indexing="ij")
