"""Time evolution from the left-localized trial state: exact propagation in
the eigenbasis and the two-level doublet approximation."""

import math
from dataclasses import dataclass, field

import numpy as np

from rabitunnel import specfun
from rabitunnel.errors import ConvergenceError
from rabitunnel.model import BasisSpec, ModelParams
from rabitunnel.spectra import DensityProfile, SpectralResult, default_grid, position_projections
from rabitunnel.states import JointState
from rabitunnel.variational import (
    displaced_joint_state,
    doublet_energies,
    parity_doublet_state,
    tunneling_splitting,
    variational_params,
)

# exact-evolution frequency differences below this (units of omega_0) count as slow
SLOW_CUTOFF = 0.5


@dataclass(frozen=True, eq=False)
class Trajectory:
    times: np.ndarray = field(repr=False)
    grid: np.ndarray = field(repr=False)
    states: np.ndarray = field(repr=False)  # (n_times, dim)
    sx: np.ndarray = field(repr=False)
    sy: np.ndarray = field(repr=False)
    sz: np.ndarray = field(repr=False)
    density: np.ndarray = field(repr=False)  # (n_times, n_grid)
    mode: str = "exact"
    energy: np.ndarray | None = field(default=None, repr=False)
    amplitudes: np.ndarray | None = field(default=None, repr=False)  # approx: over (Phi_-, Phi_+)
    sz_closed: np.ndarray | None = field(default=None, repr=False)
    sx_closed: np.ndarray | None = field(default=None, repr=False)

    @property
    def norms(self):
        return np.linalg.norm(self.states, axis=1)

    def profile(self, i):
        return DensityProfile(self.grid, self.density[i])


def period_times(fractions, delta_omega):
    """Convert fractions of the tunneling period ``2 pi / delta_omega`` to
    times in units of ``1/omega_0``."""
    return np.asarray(fractions, dtype=float) * (2.0 * math.pi / delta_omega)


def initial_left_state(params: ModelParams, basis: BasisSpec) -> JointState:
    """``|psi_{0,L}> = |alpha0> (x) (cos th0/2 |+x> + sin th0/2 |-x>)``."""
    return displaced_joint_state(params, 0, "L", basis)


def qubit_observables(state: JointState):
    """``(<sx>, <sy>, <sz>)`` of the reduced qubit state."""
    return _observables(state.coefficients[None, :])[0]


def _observables(coeffs):
    plus, minus = coeffs[:, 0::2], coeffs[:, 1::2]
    z = np.sum(np.conj(plus) * minus, axis=1)
    sz = np.sum(np.abs(plus) ** 2 - np.abs(minus) ** 2, axis=1)
    return np.column_stack([2.0 * z.real, 2.0 * z.imag, sz])


def _densities(coeffs, phi):
    return np.abs(coeffs[:, 0::2] @ phi) ** 2 + np.abs(coeffs[:, 1::2] @ phi) ** 2


def density_profile(state: JointState, grid=None) -> DensityProfile:
    """``rho(qt) = |psi_+z(qt)|^2 + |psi_-z(qt)|^2``; check ``.truncated`` for
    probability lost off the grid."""
    grid = default_grid() if grid is None else np.asarray(grid, dtype=float)
    plus, minus = position_projections(state, grid)
    return DensityProfile(grid, np.abs(plus) ** 2 + np.abs(minus) ** 2)


def _require_converged(spectrum):
    if not spectrum.converged:
        raise ConvergenceError("spectrum is not converged; use converged_spectrum or a larger n_max")


def evolve_exact(state0: JointState, spectrum: SpectralResult, times, grid=None) -> Trajectory:
    _require_converged(spectrum)
    state0.require_normalized(1e-8)
    if state0.basis != spectrum.basis:
        raise ValueError(f"basis mismatch: {state0.basis} vs {spectrum.basis}")
    grid = default_grid() if grid is None else np.asarray(grid, dtype=float)
    times = np.atleast_1d(np.asarray(times, dtype=float))
    V, E = spectrum.eigenvectors, spectrum.eigenvalues
    c = V.T @ state0.coefficients
    phases = np.exp(-1j * np.outer(times, E))  # (T, K)
    states = (phases * c) @ V.T
    obs = _observables(states)
    # recomputed from the evolved amplitudes rather than assumed conserved
    energy = np.sum(np.abs(phases * c) ** 2 * E, axis=1)
    phi = specfun.ho_wavefunctions(spectrum.basis.n_max, grid)
    dens = _densities(states, phi) if times.size else np.zeros((0, grid.size))
    return Trajectory(times, grid, states, obs[:, 0], obs[:, 1], obs[:, 2], dens, "exact", energy=energy)


def evolve_approx(params: ModelParams, times, basis: BasisSpec, grid=None) -> Trajectory:
    """Two-level evolution within ``{Phi_{-,0}, Phi_{+,0}}`` starting from
    their equal-weight sum."""
    sol = variational_params(params)
    grid = default_grid() if grid is None else np.asarray(grid, dtype=float)
    times = np.atleast_1d(np.asarray(times, dtype=float))
    e_minus, _ = doublet_energies(params, 0)
    dw = tunneling_splitting(params)
    phi_m = parity_doublet_state(params, 0, "-", basis).coefficients
    phi_p = parity_doublet_state(params, 0, "+", basis).coefficients
    global_phase = np.exp(-1j * e_minus * times) / math.sqrt(2.0)
    amps = np.column_stack([global_phase, global_phase * np.exp(-1j * dw * times)])
    states = amps @ np.vstack([phi_m, phi_p])
    obs = _observables(states)
    phi = specfun.ho_wavefunctions(basis.n_max, grid)
    dens = _densities(states, phi) if times.size else np.zeros((0, grid.size))
    return Trajectory(
        times,
        grid,
        states,
        obs[:, 0],
        obs[:, 1],
        obs[:, 2],
        dens,
        "approx",
        amplitudes=amps,
        sz_closed=math.sin(sol.theta0) * np.cos(dw * times),
        sx_closed=np.full(times.size, math.cos(sol.theta0)),
    )


@dataclass(frozen=True, eq=False)
class SlowComponents:
    times: np.ndarray = field(repr=False)
    grid: np.ndarray = field(repr=False)
    sz: np.ndarray = field(repr=False)
    density: np.ndarray = field(repr=False)


def slow_components(state0: JointState, spectrum: SpectralResult, times, grid=None, cutoff=SLOW_CUTOFF, weight_floor=1e-14):
    """Exact ``<sz>(t)`` and ``rho(qt, t)`` keeping only the interference terms
    between eigenstates closer than ``cutoff`` in energy.

    This strips the small fast oscillations and leaves the tunneling
    envelope.
    """
    _require_converged(spectrum)
    grid = default_grid() if grid is None else np.asarray(grid, dtype=float)
    times = np.atleast_1d(np.asarray(times, dtype=float))
    if np.any(state0.coefficients.imag != 0):
        raise ValueError("slow_components needs a real initial state")
    c = spectrum.eigenvectors.T @ state0.coefficients.real
    keep = np.flatnonzero(c**2 > weight_floor)
    ck, ek, vk = c[keep], spectrum.eigenvalues[keep], spectrum.eigenvectors[:, keep]
    gap = np.subtract.outer(ek, ek)
    weights = np.outer(ck, ck) * (np.abs(gap) < cutoff)
    sz_op = vk[0::2].T @ vk[0::2] - vk[1::2].T @ vk[1::2]
    phi = specfun.ho_wavefunctions(spectrum.basis.n_max, grid)
    fp, fm = vk[0::2].T @ phi, vk[1::2].T @ phi
    sz = np.empty(times.size)
    dens = np.empty((times.size, grid.size))
    for i, t in enumerate(times):
        w = weights * np.cos(gap * t)  # real eigenvectors and real c
        sz[i] = np.sum(w * sz_op)
        dens[i] = np.einsum("jk,jq,kq->q", w, fp, fp) + np.einsum("jk,jq,kq->q", w, fm, fm)
    return SlowComponents(times, grid, sz, dens)


def l1_distance(a, b, grid):
    return float(np.trapezoid(np.abs(np.asarray(a) - np.asarray(b)), grid))
