"""Truncated Rabi Hamiltonian and parity operator.

Product basis ordering: index ``2n`` is ``|n, +z>`` and ``2n + 1`` is
``|n, -z>``. Units are hbar = omega_0 = 1.
"""

from dataclasses import dataclass, field

import numpy as np

DEFAULT_N_MAX = 120
BOUNDARY_TOL = 1e-8


@dataclass(frozen=True)
class ModelParams:
    """Qubit splitting ``omega_q`` (Omega) and coupling ``coupling`` (lambda),
    both in units of the oscillator frequency."""

    omega_q: float
    coupling: float

    def __post_init__(self):
        if not self.omega_q > 0:
            raise ValueError(f"omega_q must be positive, got {self.omega_q}")
        if not self.coupling >= 0:
            raise ValueError(f"coupling must be non-negative, got {self.coupling}")

    @property
    def epsilon(self):
        """``Omega / (4 lambda^2)``; infinite at zero coupling."""
        if self.coupling == 0:
            return float("inf")
        return self.omega_q / (4.0 * self.coupling**2)

    @property
    def double_well(self):
        return 4.0 * self.coupling**2 > self.omega_q


@dataclass(frozen=True)
class BasisSpec:
    n_max: int = DEFAULT_N_MAX

    def __post_init__(self):
        if self.n_max < 1:
            raise ValueError(f"n_max must be positive, got {self.n_max}")

    @property
    def dim(self):
        return 2 * self.n_max


@dataclass(frozen=True, eq=False)
class HamiltonianMatrix:
    matrix: np.ndarray = field(repr=False)
    basis: BasisSpec
    params: ModelParams


def build_hamiltonian(params: ModelParams, basis: BasisSpec) -> HamiltonianMatrix:
    """Dense real-symmetric matrix of ``Omega/2 sx + a^dag a + lambda sz (a^dag + a)``.

    No constant energy shift is applied.
    """
    if basis.n_max < 2:
        raise ValueError(f"n_max must be at least 2, got {basis.n_max}")
    n = np.arange(basis.n_max)
    h = np.zeros((basis.dim, basis.dim))
    h[2 * n, 2 * n] = n
    h[2 * n + 1, 2 * n + 1] = n
    h[2 * n, 2 * n + 1] = h[2 * n + 1, 2 * n] = 0.5 * params.omega_q
    hop = params.coupling * np.sqrt(n[1:])
    up, down = 2 * n[:-1], 2 * n[:-1] + 1
    h[up, up + 2] = h[up + 2, up] = hop
    h[down, down + 2] = h[down + 2, down] = -hop
    h.setflags(write=False)
    return HamiltonianMatrix(h, basis, params)


def parity_matrix(basis: BasisSpec) -> np.ndarray:
    """Real form of ``exp[i pi (a^dag a + sx/2 - 1/2)] = (-1)^n (x) sx``."""
    n = np.arange(basis.n_max)
    sign = (-1.0) ** n
    p = np.zeros((basis.dim, basis.dim))
    p[2 * n, 2 * n + 1] = sign
    p[2 * n + 1, 2 * n] = sign
    return p


def apply_parity(vectors):
    """Apply parity to one vector or to the columns of a matrix without
    forming the dense operator."""
    v = np.asarray(vectors)
    out = np.empty_like(v)
    n = np.arange(v.shape[0] // 2)
    sign = (-1.0) ** n
    if v.ndim == 2:
        sign = sign[:, None]
    out[0::2] = sign * v[1::2]
    out[1::2] = sign * v[0::2]
    return out


def boundary_weight(vectors, levels=2):
    """Probability carried by the top ``levels`` Fock states (both qubit
    branches), per column if ``vectors`` is a matrix."""
    v = np.asarray(vectors)
    tail = v[-2 * levels:]
    return np.sum(np.abs(tail) ** 2, axis=0)
