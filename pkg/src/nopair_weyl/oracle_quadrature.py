"""Brute-force reference values by Gauss-Laguerre quadrature.

Independent of the closed-form sums in :mod:`coulomb_matrix`: basis functions
are evaluated from their Laguerre-polynomial definition and the radial
integral is done numerically. The angular integral is done analytically
(basis functions carry ``exp(i m phi)``), so only same-``m`` pairs appear.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import roots_genlaguerre

from .coulomb_matrix import v0_element
from .report import VerificationReport, check_leq, combine
from .special_fns import laguerre

ORACLE_MAX_N = 100


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes/weights for ``int_0^inf f(t) t^weight_exponent e^-t dt``."""

    nodes: np.ndarray
    weights: np.ndarray
    weight_exponent: float

    def integrate(self, values) -> float:
        return float(np.dot(self.weights, values))


@lru_cache(maxsize=None)
def gauss_laguerre(n_nodes: int, weight_exponent: float) -> QuadratureRule:
    if n_nodes < 1:
        raise ValueError("need at least one quadrature node")
    if not weight_exponent > -1:
        raise ValueError("weight exponent must exceed -1")
    try:
        nodes, weights = roots_genlaguerre(n_nodes, weight_exponent)
    except Exception as exc:  # pragma: no cover - scipy internals
        raise RuntimeError(f"quadrature rule ({n_nodes}, {weight_exponent}) failed: {exc}") from exc
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return QuadratureRule(nodes, weights, float(weight_exponent))


@dataclass(frozen=True)
class BasisFunction:
    """Landau-level function ``f_{m,n}`` (radial part; angular factor ``e^{i m phi}``)."""

    m: int
    n: int

    @property
    def log_normalization(self) -> float:
        return 0.5 * (math.lgamma(self.n + 1) - math.log(math.pi) - math.lgamma(self.n + abs(self.m) + 1))

    @property
    def normalization(self) -> float:
        return math.exp(self.log_normalization)

    def radial(self, r):
        r = np.asarray(r, dtype=float)
        am = abs(self.m)
        return self.normalization * np.exp(-0.5 * r * r) * r**am * laguerre(self.n, am, r * r)

    def laguerre_part(self, t):
        # radial profile without the e^{-t/2} t^{|m|/2} factor, t = r^2
        return self.normalization * laguerre(self.n, abs(self.m), t)


def _check(n: int, n2: int) -> None:
    if not (0 <= n <= ORACLE_MAX_N and 0 <= n2 <= ORACLE_MAX_N):
        raise ValueError(f"oracle indices must lie in 0..{ORACLE_MAX_N}")


def eval_basis_radial(m: int, n: int, r):
    if not 0 <= n <= ORACLE_MAX_N:
        raise ValueError(f"oracle indices must lie in 0..{ORACLE_MAX_N}")
    return BasisFunction(m, n).radial(r)


def _nodes_for(n: int, n2: int) -> int:
    return n + n2 + 2


def oracle_coulomb_element(m: int, n: int, n2: int) -> float:
    """``(f_{m,n}, |z|^-1 f_{m,n2})`` by quadrature.

    With ``t = r^2`` the integral becomes
    ``pi N_n N_n2 int t^{|m|-1/2} e^-t L_n L_n2 dt``; the integrand is a
    polynomial of degree ``n + n2`` against the rule's weight, so the rule is
    exact up to rounding.
    """
    _check(n, n2)
    am = abs(m)
    rule = gauss_laguerre(_nodes_for(n, n2), am - 0.5)
    f, g = BasisFunction(m, n), BasisFunction(m, n2)
    return math.pi * rule.integrate(f.laguerre_part(rule.nodes) * g.laguerre_part(rule.nodes))


def oracle_orthonormality(m: int, n: int, n2: int) -> float:
    """``(f_{m,n}, f_{m,n2})``; ``pi N_n N_n2 int t^{|m|} e^-t L_n L_n2 dt``."""
    _check(n, n2)
    am = abs(m)
    rule = gauss_laguerre(_nodes_for(n, n2), float(am))
    f, g = BasisFunction(m, n), BasisFunction(m, n2)
    return math.pi * rule.integrate(f.laguerre_part(rule.nodes) * g.laguerre_part(rule.nodes))


def oracle_matrix(m: int, n_max: int, kind: str = "coulomb") -> np.ndarray:
    """Full ``(n_max+1)^2`` matrix of oracle values on a single shared rule."""
    _check(n_max, n_max)
    if kind not in ("coulomb", "overlap"):
        raise ValueError(f"unknown oracle kind {kind!r}")
    am = abs(m)
    exponent = am - 0.5 if kind == "coulomb" else float(am)
    rule = gauss_laguerre(_nodes_for(n_max, n_max), exponent)
    profiles = np.array([BasisFunction(m, n).laguerre_part(rule.nodes) for n in range(n_max + 1)])
    return math.pi * (profiles * rule.weights) @ profiles.T


def verify_oracle(m_range, n_max: int = 20, rtol: float = 1e-10) -> VerificationReport:
    """Closed form against quadrature, plus orthonormality of the basis.

    Every pair ``n, n2 <= n_max`` is integrated separately with
    :func:`oracle_coulomb_element`.
    """
    ms = sorted(set(int(m) for m in m_range))
    parts = []
    for m in ms:
        pairs = [(n, n2) for n in range(n_max + 1) for n2 in range(n_max + 1)]
        closed = np.array([v0_element(m, n, n2) for n, n2 in pairs])
        quad = np.array([oracle_coulomb_element(m, n, n2) for n, n2 in pairs])
        rel = np.abs(quad - closed) / closed
        parts.append(check_leq(f"|oracle - closed| / closed (m={m})", rel, rtol,
                               labels=lambda i, pairs=pairs: "n={}, n2={}".format(*pairs[i])))
        gram = oracle_matrix(m, n_max, kind="overlap")
        parts.append(check_leq(f"|gram - identity| (m={m})", np.abs(gram - np.eye(n_max + 1)), 1e-11))
    return combine("oracle", parts, n_max=n_max, rtol=rtol)
