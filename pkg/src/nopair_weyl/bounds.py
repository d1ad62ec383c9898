"""Diagonal majorization of the m = 0 Coulomb matrices and the critical coupling.

The Schwarz-inequality trick bounds ``(a, v a)`` by
``sum_n a_n^2 / g_n * sum_n' v_{n,n'} g_n'`` for any positive weights ``g``.
With the two weight sequences below the row sums are bounded by
``C_sigma sqrt(n+1)``, which together with the kinetic diagonal
``2 sqrt(n+1)`` gives positivity up to ``Zc = 4 / (C0 + C1)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .coulomb_matrix import SectorBlock, build_block
from .report import VerificationReport, check_leq, combine
from .spectral import assemble
from .special_fns import log_gamma, log_pochhammer, pochhammer

FORM_RTOL = 1e-12


@dataclass(frozen=True)
class BoundConstants:
    C0: float
    C1: float
    Zc: float

    def C(self, sigma: int) -> float:
        return (self.C0, self.C1)[sigma]


def compute_constants() -> BoundConstants:
    log_g4 = 4.0 * log_gamma(0.25)
    log_2pi2 = math.log(2.0 * math.pi**2)
    c0 = math.exp(log_g4 - log_2pi2)
    c1 = math.exp(math.log(32.0 * math.pi**2) - log_g4)
    zc = 1.0 / (math.exp(log_g4 - math.log(8.0 * math.pi**2)) + math.exp(math.log(8.0 * math.pi**2) - log_g4))
    return BoundConstants(C0=c0, C1=c1, Zc=zc)


def weight(sigma: int, n: int) -> float:
    if sigma == 0:
        return 1.0 / pochhammer(n + 0.25, 0.75).value
    if sigma == 1:
        return math.sqrt(n + 1) / pochhammer(n + 0.75, 1.25).value
    raise ValueError(f"sigma must be 0 or 1, got {sigma!r}")


def weight_sequence(sigma: int, n_max: int) -> np.ndarray:
    n = np.arange(n_max + 1, dtype=float)
    if sigma == 0:
        return np.exp(-log_pochhammer(n + 0.25, 0.75))
    if sigma == 1:
        return np.sqrt(n + 1) * np.exp(-log_pochhammer(n + 0.75, 1.25))
    raise ValueError(f"sigma must be 0 or 1, got {sigma!r}")


def _potential(block: SectorBlock, sigma: int) -> np.ndarray:
    if block.m != 0:
        raise ValueError("the majorization is stated for the m = 0 block")
    return (block.v0, block.v1)[sigma]


def row_sums(sigma: int, block: SectorBlock) -> np.ndarray:
    """Truncated ``S_n = g_n^-1 sum_n' v^sigma_{n,n'} g_n'`` for every row."""
    g = weight_sequence(sigma, block.n_max)
    return (_potential(block, sigma) @ g) / g


def lieb_yau_row_check(sigma: int, m0_block: SectorBlock, n=None) -> VerificationReport:
    """``S_n <= C_sigma sqrt(n+1)`` on the requested rows (all by default).

    All summands are positive, so a truncated row sum can only undershoot
    the full one and the check is valid at any truncation. For sigma = 1 the
    bound is strict. The intermediate bound
    ``C_sigma Gamma(n+s+1/2)/Gamma(n+s)`` (``s = 1/4`` resp. ``3/4``) is
    checked as well. ``details["saturation"]`` holds
    ``S_n / (C_sigma sqrt(n+1))`` for the checked rows.
    """
    consts = compute_constants()
    s = row_sums(sigma, m0_block)
    rows = np.arange(m0_block.n_max + 1) if n is None else np.atleast_1d(np.asarray(n, dtype=int))
    if np.any(rows < 0) or np.any(rows > m0_block.n_max):
        raise ValueError("row index outside the block")
    bound = consts.C(sigma) * np.sqrt(rows + 1.0)
    shift = (0.25, 0.75)[sigma]
    tight = consts.C(sigma) * np.exp(gammaln(rows + shift + 0.5) - gammaln(rows + shift))
    report = combine(f"row sum sigma={sigma}", [
        check_leq(f"row sum sigma={sigma} <= C*gamma ratio", s[rows], tight,
                  rel_tol=FORM_RTOL, labels=lambda i: f"n={rows[i]}"),
        check_leq(f"row sum sigma={sigma} <= C*sqrt(n+1)", s[rows], bound, strict=(sigma == 1),
                  rel_tol=FORM_RTOL, labels=lambda i: f"n={rows[i]}"),
    ])
    sat = s[rows] / bound
    return VerificationReport(report.name, report.n_checks, report.n_failed, report.n_inconclusive,
                              report.worst_margin, report.worst_case,
                              {"n_max": m0_block.n_max, "max_saturation": float(sat.max()),
                               "saturation": sat.tolist() if rows.size <= 16 else None})


def ratio_bound_check(n_max: int = 10_000) -> VerificationReport:
    """The Gautschi consequences used to reach ``sqrt(n+1)``.

    ``Gamma(n+3/4)/Gamma(n+1/4) <= sqrt(n+3/4) < sqrt(n+1)`` and
    ``Gamma(n+5/4)/Gamma(n+3/4) < sqrt(n+1)`` for ``0 <= n <= n_max``.
    """
    n = np.arange(n_max + 1, dtype=float)
    r0 = np.exp(gammaln(n + 0.75) - gammaln(n + 0.25))
    r1 = np.exp(gammaln(n + 1.25) - gammaln(n + 0.75))
    root = np.sqrt(n + 1)

    def label(i):
        return f"n={i}"

    return combine("gamma ratio bounds", [
        check_leq("G(n+3/4)/G(n+1/4) <= sqrt(n+3/4)", r0, np.sqrt(n + 0.75), rel_tol=FORM_RTOL, labels=label),
        check_leq("sqrt(n+3/4) < sqrt(n+1)", np.sqrt(n + 0.75), root, strict=True, labels=label),
        check_leq("G(n+5/4)/G(n+3/4) < sqrt(n+1)", r1, root, strict=True, rel_tol=FORM_RTOL, labels=label),
    ], n_max=n_max)


def quadratic_form_bound_check(sigma: int, a, n_max: int | None = None) -> VerificationReport:
    """``(a, v^sigma a) <= C_sigma sum sqrt(n+1) a_n^2`` for one or more sequences.

    *a* is a vector or a stack of row vectors, non-negative, supported in
    ``0..n_max`` (default: its own length).
    """
    a = np.atleast_2d(np.asarray(a, dtype=float))
    if np.any(a < 0):
        raise ValueError("sequences must be non-negative")
    n_max = a.shape[1] - 1 if n_max is None else n_max
    if a.shape[1] > n_max + 1:
        if np.any(a[:, n_max + 1:]):
            raise ValueError("sequence support exceeds n_max")
        a = a[:, :n_max + 1]
    v = (build_block(0, n_max).v0, build_block(0, n_max).v1)[sigma]
    size = a.shape[1]
    v = v[:size, :size]
    lhs = np.einsum("in,nk,ik->i", a, v, a)
    rhs = compute_constants().C(sigma) * (a**2 @ np.sqrt(np.arange(size) + 1.0))
    # for a = 0 the strict form degenerates to 0 < 0; keep it non-strict there
    nonzero = np.any(a != 0, axis=1)
    strict = sigma == 1
    parts = [check_leq(f"form sigma={sigma}", lhs[nonzero], rhs[nonzero], strict=strict,
                       rel_tol=FORM_RTOL, labels=lambda i: f"sequence {np.flatnonzero(nonzero)[i]}")]
    if not nonzero.all():
        parts.append(check_leq(f"form sigma={sigma} (zero sequence)", lhs[~nonzero], rhs[~nonzero]))
    return combine(f"form bound sigma={sigma}", parts, n_sequences=int(a.shape[0]), n_max=n_max)


def random_sequences(count: int, n_max: int, seed: int, max_support: int | None = None) -> np.ndarray:
    """Seeded non-negative sequences: uniform [0, 1) entries on a random support."""
    rng = np.random.default_rng(seed)
    size = n_max + 1
    max_support = size if max_support is None else min(max_support, size)
    out = np.zeros((count, size))
    for i in range(count):
        k = int(rng.integers(1, max_support + 1))
        support = rng.choice(size, size=k, replace=False)
        out[i, support] = rng.random(k)
    return out


def energy_lower_bound_check(Z: float, a, n_max: int | None = None) -> VerificationReport:
    """``E_0[a] >= (1 - Z/Zc) sum 2 sqrt(n+1) a_n^2`` for ``0 <= Z <= Zc``."""
    consts = compute_constants()
    if not 0 <= Z <= consts.Zc:
        raise ValueError(f"Z must lie in [0, Zc={consts.Zc:.6f}], got {Z!r}")
    a = np.atleast_2d(np.asarray(a, dtype=float))
    if np.any(a < 0):
        raise ValueError("sequences must be non-negative")
    n_max = a.shape[1] - 1 if n_max is None else n_max
    h = assemble(0, Z, n_max).matrix[:a.shape[1], :a.shape[1]]
    energy = np.einsum("in,nk,ik->i", a, h, a)
    kinetic = a**2 @ (2.0 * np.sqrt(np.arange(a.shape[1]) + 1.0))
    bound = (1.0 - Z / consts.Zc) * kinetic
    return check_leq("energy lower bound", bound, energy, rel_tol=FORM_RTOL,
                     labels=lambda i: f"sequence {i}",
                     details={"Z": Z, "n_sequences": int(a.shape[0]),
                              "min_energy": float(energy.min())})


def lieb_yau_suite(n_rows: int = 512, n_max: int = 4096, n_sequences: int = 1000,
                   support: int = 256, seed: int = 0) -> VerificationReport:
    """Row sums for both weights, the Gamma-ratio steps, and random form bounds."""
    block = build_block(0, n_max)
    rows = np.arange(n_rows + 1)
    seqs = random_sequences(n_sequences, support - 1, seed)
    parts = [
        lieb_yau_row_check(0, block, rows),
        lieb_yau_row_check(1, block, rows),
        ratio_bound_check(),
        quadratic_form_bound_check(0, seqs),
        quadratic_form_bound_check(1, seqs),
    ]
    return combine("lieb-yau", parts, seed=seed, n_max=n_max, n_rows=n_rows, n_sequences=n_sequences)
