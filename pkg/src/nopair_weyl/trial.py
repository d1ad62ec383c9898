"""Trial sequences ``a_n = (n+1)^-3/4`` (n <= N) that drive the m = 0 form down.

Their energy behaves like ``2 (1 - Z/Zc) log N + O(1)``, so the form is
unbounded below as soon as ``Z > Zc``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

TRIAL_MAX_N = 50_000
FIT_MIN_N = 100


class FitError(ValueError):
    pass


@dataclass(frozen=True)
class TrialEnergyRecord:
    N: int
    kinetic: float
    v0_energy: float
    v1_energy: float

    def total(self, Z: float) -> float:
        return self.kinetic - 0.5 * Z * (self.v0_energy + self.v1_energy)


def trial_sequence(N: int) -> np.ndarray:
    return (np.arange(N + 1) + 1.0) ** -0.75


def _coulomb_energy(N: int, sigma: int) -> float:
    """``(a, v^sigma a)`` through the diagonal-in-k representation.

    ``(1/pi) sum_k (k+1)_{sigma-1/2} (sum_{j=1}^{N-k+1} (j)_{-1/2} (j+k)^{-(3/4+sigma/2)})^2``
    which is the m = 0 closed form with the sum over ``k`` pulled outside.
    """
    j = np.arange(1, N + 2, dtype=float)
    coeff = np.exp(gammaln(j - 0.5) - gammaln(j))      # (j)_{-1/2}
    power = j ** -(0.75 + 0.5 * sigma)                    # power[i] = (i+1)^-s
    k = np.arange(N + 1, dtype=float)
    outer = np.exp(gammaln(k + 0.5 + sigma) - gammaln(k + 1))   # (k+1)_{sigma-1/2}
    inner = np.empty(N + 1)
    for kk in range(N + 1):
        # j runs 1..N-kk+1, so (j+kk) runs kk+1..N+1
        inner[kk] = np.dot(coeff[:N - kk + 1], power[kk:])
    total = 0.0
    for term in outer * inner**2:
        total += term
    return total / math.pi


def trial_energies(N: int) -> TrialEnergyRecord:
    if not 1 <= N <= TRIAL_MAX_N:
        raise ValueError(f"cutoff N must lie in 1..{TRIAL_MAX_N}, got {N}")
    n = np.arange(N + 1, dtype=float)
    kinetic = 0.0
    for term in 2.0 * np.sqrt(n + 1) * (n + 1) ** -1.5:
        kinetic += term
    return TrialEnergyRecord(N=N, kinetic=float(kinetic),
                             v0_energy=float(_coulomb_energy(N, 0)), v1_energy=float(_coulomb_energy(N, 1)))


def _slope(xs, ys, correction: float | None = None) -> float:
    x = np.asarray(xs, dtype=float)
    cols = [np.log(x), np.ones_like(x)]
    if correction is not None:
        cols.append(x ** -correction)
    coef, *_ = np.linalg.lstsq(np.column_stack(cols), np.asarray(ys, dtype=float), rcond=None)
    return float(coef[0])


def _fit_window(records):
    used = sorted((r for r in records if r.N >= FIT_MIN_N), key=lambda r: r.N)
    if len(used) < 4:
        raise FitError(f"need at least 4 cutoffs with N >= {FIT_MIN_N}, got {len(used)}")
    if used[-1].N < 100 * used[0].N:
        raise FitError(f"cutoffs must span two decades, got {used[0].N}..{used[-1].N}")
    return used


def fit_log_slope(records, Z: float, correction: float | None = None) -> float:
    """Least-squares slope of ``total(Z)`` against ``log N`` (expected ``2(1 - Z/Zc)``).

    By default the model is ``slope * log N + const``. The finite-N offset
    of the Coulomb energies decays like ``N^-1/4``, which biases that plain
    fit noticeably at N ~ 1e4; passing ``correction=0.25`` adds a
    ``N^-correction`` column to the model.
    """
    used = _fit_window(records)
    return _slope([r.N for r in used], [r.total(Z) for r in used], correction)


def fit_component_slopes(records, correction: float | None = None) -> dict[str, float]:
    """Slopes of kinetic, v0 and v1 energies against ``log N``."""
    used = _fit_window(records)
    ns = [r.N for r in used]
    return {
        name: _slope(ns, [getattr(r, name) for r in used], correction)
        for name in ("kinetic", "v0_energy", "v1_energy")
    }


def default_cutoffs(N_max: int) -> list[int]:
    """Decades from 100 below ``N_max``, then ``N_max`` itself."""
    cuts = []
    n = FIT_MIN_N
    while n < N_max:
        cuts.append(n)
        n *= 10
    cuts.append(N_max)
    return cuts
