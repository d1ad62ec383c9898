"""Truncated energy form of one sector and its lowest eigenvalues."""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .coulomb_matrix import build_block

logger = logging.getLogger(__name__)

RESIDUAL_RTOL = 1e-9


class NumericalError(RuntimeError):
    """Eigensolver failure or a residual outside the contract."""


@dataclass(frozen=True, eq=False)
class HamiltonianBlock:
    """Matrix ``t^m - (Z/2)(v^{m,0} + v^{m,1})`` on indices ``0..n_max``."""

    m: int
    Z: float
    n_max: int
    matrix: np.ndarray

    def energy(self, a) -> float:
        """Quadratic form ``a^T H a`` for a real coefficient vector."""
        a = np.asarray(a, dtype=float)
        return float(a @ self.matrix @ a)


@dataclass(frozen=True)
class SpectralScanRecord:
    m: int
    Z: float
    n_max: int
    lowest_k_eigenvalues: tuple[float, ...]

    @property
    def ground(self) -> float:
        return self.lowest_k_eigenvalues[0]


def assemble(m: int, Z: float, n_max: int) -> HamiltonianBlock:
    if not Z >= 0:
        raise ValueError(f"coupling Z must be non-negative, got {Z!r}")
    block = build_block(m, n_max)
    matrix = -(0.5 * Z) * block.potential
    matrix[np.diag_indices_from(matrix)] += block.kinetic
    matrix.flags.writeable = False
    return HamiltonianBlock(m=m, Z=float(Z), n_max=n_max, matrix=matrix)


def lowest_eigenvalues(block, k: int = 1, return_vectors: bool = False):
    """The ``k`` smallest eigenvalues, ascending.

    *block* may be a :class:`HamiltonianBlock` or any real symmetric array.
    With ``return_vectors`` the eigenvectors come back as columns and every
    pair is checked against ``||A v - lam v|| <= 1e-9 ||A||``.
    """
    a = block.matrix if isinstance(block, HamiltonianBlock) else np.asarray(block, dtype=float)
    size = a.shape[0]
    if a.ndim != 2 or a.shape[1] != size:
        raise ValueError("expected a square matrix")
    if not 1 <= k <= size:
        raise ValueError(f"k must lie in 1..{size}, got {k}")
    try:
        result = scipy.linalg.eigh(a, subset_by_index=[0, k - 1], eigvals_only=not return_vectors,
                                   check_finite=True)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise NumericalError(f"eigensolver failed on {size}x{size} matrix "
                             f"(max |a_ij| = {np.max(np.abs(a)):.3e}): {exc}") from exc
    if not return_vectors:
        return result
    values, vectors = result
    norm = np.linalg.norm(a, 2) if size <= 512 else np.linalg.norm(a, "fro")
    residuals = np.linalg.norm(a @ vectors - vectors * values, axis=0)
    if np.any(residuals > RESIDUAL_RTOL * max(norm, 1e-300)):
        raise NumericalError(f"eigenpair residuals {residuals.max():.3e} exceed "
                             f"{RESIDUAL_RTOL:.0e} * ||A|| = {RESIDUAL_RTOL * norm:.3e}")
    return values, vectors


def scan(Z_list, m_list, n_max_list, k: int = 1, errors: list | None = None) -> list[SpectralScanRecord]:
    """Lowest eigenvalues over the Cartesian grid, ordered by (n_max, m, Z).

    A failing cell is logged, appended to *errors* as ``((m, Z, n_max), exc)``
    if a list is given, and skipped.
    """
    records = []
    for n_max, m, Z in itertools.product(n_max_list, m_list, Z_list):
        try:
            values = lowest_eigenvalues(assemble(m, Z, n_max), k)
        except (NumericalError, ValueError, MemoryError) as exc:
            logger.warning("scan cell m=%s Z=%s n_max=%s failed: %s", m, Z, n_max, exc)
            if errors is not None:
                errors.append(((m, Z, n_max), exc))
            continue
        records.append(SpectralScanRecord(m, float(Z), n_max, tuple(float(v) for v in values)))
    return records


def ground_state_log_rate(m: int, Z: float, n_max_list) -> float:
    """Least-squares slope of the lowest eigenvalue against ``log n_max``.

    Descriptive only: for supercritical ``Z`` the truncated ground state
    drifts downward and this measures how fast.
    """
    ns = np.asarray(sorted(n_max_list), dtype=float)
    if ns.size < 2:
        raise ValueError("need at least two truncations")
    ground = [lowest_eigenvalues(assemble(m, Z, int(n)), 1)[0] for n in ns]
    return float(np.polyfit(np.log(ns), ground, 1)[0])
