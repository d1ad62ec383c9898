"""Landau-basis matrix elements of the kinetic term and the two Coulomb summands.

For angular momentum ``m`` and radial indices ``n, n2``:

* kinetic ``t^m_{n,n} = 2 sqrt(n + m_+ + 1)`` (diagonal),
* ``v^{m,0}_{n,n2} = (f_{m,n}, |z|^-1 f_{m,n2})``, a finite sum of Pochhammer
  ratios,
* ``v^{m,1}``, the same Coulomb matrix seen through the isometry
  ``d* |d*|^-1``, which maps sector ``m`` onto ``m+1`` (shifting ``n`` by one
  when ``m < 0``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .report import VerificationReport, check_leq, combine
from .special_fns import log_pochhammer

DEFAULT_NMAX = 256
MAX_NMAX = 8192
INEQUALITY_RTOL = 1e-12


def kinetic_diag(m: int, n: int) -> float:
    return 2.0 * math.sqrt(n + max(m, 0) + 1)


def _check_index(*ns: int) -> None:
    for n in ns:
        if n < 0 or n > MAX_NMAX + 1:
            raise ValueError(f"radial index {n} outside 0..{MAX_NMAX + 1}")


def v0_element(m: int, n: int, n2: int) -> float:
    """Closed-form Coulomb element, summed term by term in ascending ``k``.

    Each term ``(k+1)_{|m|-1/2} / ((n-k+1/2)_{1/2} (n2-k+1/2)_{1/2})`` and the
    normalization ``((n+1)_{|m|} (n2+1)_{|m|})^{-1/2}`` are combined in log
    space before exponentiation.
    """
    _check_index(n, n2)
    am = abs(m)
    k = np.arange(min(n, n2) + 1, dtype=float)
    log_norm = 0.5 * (float(log_pochhammer(n + 1.0, am)) + float(log_pochhammer(n2 + 1.0, am)))
    log_terms = (log_pochhammer(k + 1.0, am - 0.5)
                 - (log_pochhammer(n - k + 0.5, 0.5) + log_pochhammer(n2 - k + 0.5, 0.5))
                 - log_norm)
    total = 0.0
    for term in np.exp(log_terms):
        total += term
    return total / math.pi


def v1_element(m: int, n: int, n2: int) -> float:
    if m >= 0:
        return v0_element(m + 1, n, n2)
    return v0_element(m + 1, n + 1, n2 + 1)


@dataclass(frozen=True, eq=False)
class SectorBlock:
    """Truncated matrices of one angular-momentum sector, indices ``0..n_max``.

    Arrays are read-only and may be shared between blocks.
    """

    m: int
    n_max: int
    kinetic: np.ndarray
    v0: np.ndarray
    v1: np.ndarray

    @property
    def size(self) -> int:
        return self.n_max + 1

    @property
    def potential(self) -> np.ndarray:
        """``v0 + v1``, the matrix of ``2V`` in this sector."""
        return self.v0 + self.v1


def _factor(abs_m: int, size: int) -> np.ndarray:
    """Lower-triangular ``B`` with ``v^{m,0} = B B^T / pi`` on ``0..size-1``.

    ``B[n, k] = (n-k+1)_{-1/2} * sqrt((k+1)_{|m|-1/2} / (n+1)_{|m|})`` for
    ``k <= n``; the square root is formed in log space.
    """
    idx = np.arange(size, dtype=float)
    log_w = log_pochhammer(idx + 1.0, abs_m - 0.5)
    log_norm = log_pochhammer(idx + 1.0, float(abs_m))
    # 1/(j+1/2)_{1/2} = (j+1)_{-1/2}
    c = np.exp(-log_pochhammer(idx + 0.5, 0.5))
    b = np.zeros((size, size))
    for n in range(size):
        b[n, :n + 1] = c[n::-1] * np.exp(0.5 * (log_w[:n + 1] - log_norm[n]))
    return b


@lru_cache(maxsize=8)
def _v0_matrix(abs_m: int, size: int) -> np.ndarray:
    b = _factor(abs_m, size)
    gram = b @ b.T
    gram = 0.5 * (gram + gram.T)
    gram /= math.pi
    gram.flags.writeable = False
    return gram


def v0_matrix(m: int, n_max: int) -> np.ndarray:
    """``v^{m,0}`` on indices ``0..n_max`` (read-only, cached)."""
    if n_max < 0 or n_max > MAX_NMAX:
        raise ValueError(f"n_max must lie in 0..{MAX_NMAX}, got {n_max}")
    return _v0_matrix(abs(m), n_max + 1)


def v1_matrix(m: int, n_max: int) -> np.ndarray:
    if m >= 0:
        return v0_matrix(m + 1, n_max)
    if n_max + 1 > MAX_NMAX:
        raise ValueError(f"n_max must lie below {MAX_NMAX} for m < 0")
    return _v0_matrix(abs(m + 1), n_max + 2)[1:, 1:]


@lru_cache(maxsize=64)
def build_block(m: int, n_max: int = DEFAULT_NMAX) -> SectorBlock:
    kinetic = 2.0 * np.sqrt(np.arange(n_max + 1) + max(m, 0) + 1.0)
    kinetic.flags.writeable = False
    return SectorBlock(m=m, n_max=n_max, kinetic=kinetic,
                       v0=v0_matrix(m, n_max), v1=v1_matrix(m, n_max))


def clear_cache() -> None:
    build_block.cache_clear()
    _v0_matrix.cache_clear()


def _pair_label(n_max):
    size = n_max + 1
    return lambda i: f"n={i // size}, n2={i % size}"


def verify_lemma_pre(m_range, n_max: int) -> VerificationReport:
    """Positivity, ``|m|`` symmetry and monotone decrease in ``m >= 0``.

    ``m_range`` is any iterable of integers; the monotonicity check runs on
    each ``m >= 0`` in it (comparing against ``m + 1``).
    """
    ms = sorted(set(int(m) for m in m_range))
    parts = []
    mismatched = 0
    for m in ms:
        v = v0_matrix(m, n_max)
        parts.append(check_leq(f"v0 >= 0 (m={m})", 0.0, v, labels=_pair_label(n_max)))
        if not np.array_equal(v, v.T):
            mismatched += 1
        if not np.array_equal(v, v0_matrix(-m, n_max)):
            mismatched += 1
        if m >= 0:
            upper = v0_matrix(m + 1, n_max)
            parts.append(check_leq(f"v0(m={m + 1}) <= v0(m={m})", upper, v,
                                   rel_tol=INEQUALITY_RTOL, labels=_pair_label(n_max)))
    probes = [(0, 0), (n_max, 0), (n_max // 2, n_max)]
    for m in ms:
        for n, n2 in probes:
            if v0_element(m, n, n2) != v0_element(-m, n, n2):
                mismatched += 1
            if v0_element(m, n, n2) != v0_element(m, n2, n):
                mismatched += 1
    exact = VerificationReport("v0 symmetric and v0(m) == v0(-m) bitwise",
                               n_checks=len(ms) * (2 + 2 * len(probes)), n_failed=mismatched,
                               n_inconclusive=0,
                               worst_margin=float("inf") if not mismatched else float("-inf"))
    return combine("lemma-pre", parts + [exact], m_range=[ms[0], ms[-1]] if ms else [], n_max=n_max)


def verify_lemma2(m_range, n_max: int) -> VerificationReport:
    """Sector ``m = 0`` carries the entrywise largest potential.

    Checks ``(v0 + v1)(m) <= (v0 + v1)(0)`` for every ``m`` in range, and the
    diagonal shift ``v^{0,0}_{n+1,n2+1} <= v^{0,0}_{n,n2}``. For negative
    ``m`` the first check rests on positivity, ``|m|`` symmetry, monotonicity
    in ``m`` and the shift together, so all of them are exercised here and in
    :func:`verify_lemma_pre`.
    """
    ms = sorted(set(int(m) for m in m_range))
    ref = build_block(0, n_max).potential
    parts = []
    for m in ms:
        pot = build_block(m, n_max).potential
        parts.append(check_leq(f"(v0+v1)(m={m}) <= (v0+v1)(0)", pot, ref,
                               rel_tol=INEQUALITY_RTOL, labels=_pair_label(n_max)))
    big = v0_matrix(0, n_max + 1)
    parts.append(check_leq("v0(0)[n+1,n2+1] <= v0(0)[n,n2]", big[1:, 1:], big[:-1, :-1],
                           rel_tol=INEQUALITY_RTOL, labels=_pair_label(n_max)))
    return combine("lemma2", parts, m_range=[ms[0], ms[-1]] if ms else [], n_max=n_max)
