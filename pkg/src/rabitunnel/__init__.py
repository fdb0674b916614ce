"""Tunneling doublets of the quantum Rabi model in the slow-oscillator regime.

Energies are in units of hbar*omega_0 and times in 1/omega_0 throughout,
except in :mod:`rabitunnel.feasibility`, which works in SI units.
"""

from rabitunnel.errors import ConfigError, ConvergenceError, RegimeError, TruncationError
from rabitunnel.model import BasisSpec, HamiltonianMatrix, ModelParams, build_hamiltonian, parity_matrix
from rabitunnel.spectra import SpectralResult, converged_spectrum, diagonalize
from rabitunnel.variational import (
    JointState,
    VariationalSolution,
    doublet_energies,
    parity_doublet_state,
    tunneling_splitting,
    variational_params,
)

__all__ = [
    "BasisSpec",
    "ConfigError",
    "ConvergenceError",
    "HamiltonianMatrix",
    "JointState",
    "ModelParams",
    "RegimeError",
    "SpectralResult",
    "TruncationError",
    "VariationalSolution",
    "build_hamiltonian",
    "converged_spectrum",
    "diagonalize",
    "doublet_energies",
    "parity_doublet_state",
    "parity_matrix",
    "tunneling_splitting",
    "variational_params",
]
