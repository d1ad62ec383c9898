"""No-pair Weyl operator with a Coulomb impurity and a homogeneous magnetic field.

Truncated Landau-basis blocks of the energy form, their spectra, and
numerical checks of the inequalities behind the critical coupling
``Zc = (Gamma(1/4)^4 / (8 pi^2) + 8 pi^2 / Gamma(1/4)^4)^-1``.
"""

__version__ = "0.1.0"

from .bounds import BoundConstants, compute_constants
from .coulomb_matrix import SectorBlock, build_block, kinetic_diag, v0_element, v1_element
from .report import VerificationReport
from .spectral import HamiltonianBlock, SpectralScanRecord, assemble, lowest_eigenvalues, scan
from .trial import TrialEnergyRecord, fit_log_slope, trial_energies

__all__ = [
    "BoundConstants",
    "HamiltonianBlock",
    "SectorBlock",
    "SpectralScanRecord",
    "TrialEnergyRecord",
    "VerificationReport",
    "assemble",
    "build_block",
    "compute_constants",
    "fit_log_slope",
    "kinetic_diag",
    "lowest_eigenvalues",
    "scan",
    "trial_energies",
    "v0_element",
    "v1_element",
]
