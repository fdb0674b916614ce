"""Effective double-well pictures for the oscillator: the semiclassical lower
band, potentials inverted from stationary densities, and doublet counting."""

import math
from dataclasses import dataclass, field

import numpy as np

from rabitunnel.model import ModelParams
from rabitunnel.spectra import DensityProfile
from rabitunnel.variational import _sign, minimum_energy, require_double_well, variational_params

DEFAULT_FLOOR = 1e-4


@dataclass(frozen=True, eq=False)
class PotentialCurve:
    grid: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)
    mask: np.ndarray = field(repr=False)  # True where the value is trusted

    def valid(self):
        return self.grid[self.mask], self.values[self.mask]


@dataclass(frozen=True)
class BarrierStats:
    minima_location: float
    minimum_value: float
    barrier_value: float
    barrier_height: float


@dataclass(frozen=True)
class BarrierGap:
    exact: float
    small_epsilon: float
    bound_state: bool


@dataclass(frozen=True)
class DoubletCounts:
    energy_bound: float
    overlap_count: int
    large_N_bound: float


def lower_band(params: ModelParams, grid) -> PotentialCurve:
    """``E_b(qt) = qt^2 - sqrt(4 lambda^2 qt^2 + Omega^2/4) - 1/2``."""
    q = np.asarray(grid, dtype=float)
    values = q**2 - np.sqrt(4.0 * params.coupling**2 * q**2 + 0.25 * params.omega_q**2) - 0.5
    return PotentialCurve(q, values, np.ones(q.shape, dtype=bool))


def _derivatives(f, h):
    """Five-point central first and second derivatives; two edge points on
    each side are left as NaN."""
    d1 = np.full_like(f, np.nan)
    d2 = np.full_like(f, np.nan)
    d1[2:-2] = (-f[4:] + 8.0 * f[3:-1] - 8.0 * f[1:-3] + f[:-4]) / (12.0 * h)
    d2[2:-2] = (-f[4:] + 16.0 * f[3:-1] - 30.0 * f[2:-2] + 16.0 * f[1:-3] - f[:-4]) / (12.0 * h * h)
    return d1, d2


def curvature_potential(density: DensityProfile, energy, floor=DEFAULT_FLOOR) -> PotentialCurve:
    """Potential that would make ``sqrt(rho)`` a stationary wavefunction at
    ``energy``:

        V = (1/4) [rho''/(2 rho) - (rho'/(2 rho))^2] + E

    Points with ``rho < floor * max(rho)`` and the stencil edges are masked.
    """
    q = np.asarray(density.grid, dtype=float)
    rho = np.asarray(density.values, dtype=float)
    if q.size < 5:
        raise ValueError(f"need at least 5 grid points, got {q.size}")
    if not floor > 0:
        raise ValueError(f"floor must be positive, got {floor}")
    if np.any(rho <= 0):
        raise ValueError("density must be strictly positive on the grid")
    h = q[1] - q[0]
    if not np.allclose(np.diff(q), h, rtol=1e-9, atol=0):
        raise ValueError("grid must be uniform")
    d1, d2 = _derivatives(rho, h)
    values = 0.25 * (d2 / (2.0 * rho) - (d1 / (2.0 * rho)) ** 2) + energy
    mask = np.isfinite(values) & (rho >= floor * rho.max())
    return PotentialCurve(q, values, mask)


def barrier_stats(params: ModelParams) -> BarrierStats:
    sol = variational_params(params)
    minimum = minimum_energy(params) - 0.5
    barrier = -0.5 * (params.omega_q + 1.0)
    return BarrierStats(abs(sol.alpha0), minimum, barrier, barrier - minimum)


def variational_barrier_gap(params: ModelParams, sign) -> BarrierGap:
    """``V(0) - E_{+-,0}`` from the doublet densities, exact in the trial
    states and in the small-epsilon form. Order-of-magnitude only."""
    s = _sign(sign)
    sol = variational_params(params)
    exact = 0.5 * (sol.overlap_arg / (1.0 - s * sol.epsilon) - 1.0)
    small = 2.0 * params.coupling**2 - 0.5 + s * 0.5 * params.omega_q
    bound = 2.0 * params.coupling > math.sqrt(1.0 + params.omega_q)
    return BarrierGap(exact, small, bound)


def doublet_criterion_lhs(N):
    """``2N - 1 + 2 sqrt(2N^2 - 2N + 1)``; doublet ``N`` (counted from 1) is
    tightly split while this stays below ``4 alpha0^2``."""
    return 2 * N - 1 + 2.0 * math.sqrt(2 * N * N - 2 * N + 1)


def doublet_counts(params: ModelParams) -> DoubletCounts:
    require_double_well(params)
    sol = variational_params(params)
    lam2, eps2 = params.coupling**2, sol.epsilon**2
    energy_bound = lam2 * (1.0 + eps2) - 0.5 * params.omega_q + 0.5
    count = 0
    while doublet_criterion_lhs(count + 1) < sol.overlap_arg:
        count += 1
    large_n = 0.83 * lam2 * (1.0 - eps2) + 0.5
    return DoubletCounts(energy_bound, count, large_n)


def exact_doublets(eigenvalues, barrier=None, max_splitting=None):
    """Pair consecutive exact levels ``(E0, E1), (E2, E3), ...`` and count the
    leading pairs that pass the given tests: both levels below ``barrier``
    and/or splitting below ``max_splitting``."""
    e = np.asarray(eigenvalues)
    count = 0
    for k in range(0, e.size - 1, 2):
        lo, hi = e[k], e[k + 1]
        if barrier is not None and hi >= barrier:
            break
        if max_splitting is not None and hi - lo >= max_splitting:
            break
        count += 1
    return count
