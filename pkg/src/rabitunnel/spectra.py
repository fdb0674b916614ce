"""Exact diagonalization, parity labels and position-space projections."""

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from rabitunnel import specfun
from rabitunnel.errors import ConvergenceError
from rabitunnel.model import (
    BOUNDARY_TOL,
    DEFAULT_N_MAX,
    BasisSpec,
    HamiltonianMatrix,
    ModelParams,
    apply_parity,
    boundary_weight,
    build_hamiltonian,
)
from rabitunnel.states import JointState

RESIDUAL_TOL = 1e-8
PARITY_TOL = 1e-6
N_MAX_CAP = 2048
DEFAULT_GRID = (-6.0, 6.0, 601)


def default_grid():
    return np.linspace(*DEFAULT_GRID)


@dataclass(frozen=True, eq=False)
class SpectralResult:
    eigenvalues: np.ndarray = field(repr=False)
    eigenvectors: np.ndarray = field(repr=False)
    parities: np.ndarray = field(repr=False)
    basis: BasisSpec
    converged: bool = False
    params: ModelParams | None = None

    def __len__(self):
        return self.eigenvalues.size

    def state(self, k):
        return JointState(self.eigenvectors[:, k], self.basis)

    def boundary_weights(self, count=None):
        vecs = self.eigenvectors if count is None else self.eigenvectors[:, :count]
        return boundary_weight(vecs)

    @property
    def splitting(self):
        """``E_1 - E_0``."""
        return float(self.eigenvalues[1] - self.eigenvalues[0])


@dataclass(frozen=True, eq=False)
class DensityProfile:
    grid: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)

    @property
    def mass(self):
        return float(np.trapezoid(self.values, self.grid))

    @property
    def truncated(self):
        """True when more than 1e-3 of the probability lies off the grid."""
        return 1.0 - self.mass > 1e-3

    @property
    def peak(self):
        return float(self.grid[np.argmax(self.values)])


def _parity_sectors(n_max):
    """Orthogonal map to a basis of definite parity, split by sector.

    Each column is ``|n> (x) |+-x>`` expressed in the product basis; ``|n, +x>``
    has parity ``(-1)^n`` and ``|n, -x>`` the opposite.
    """
    dim = 2 * n_max
    n = np.arange(n_max)
    r = 1.0 / np.sqrt(2.0)
    plus_x = np.zeros((dim, n_max))
    minus_x = np.zeros((dim, n_max))
    plus_x[2 * n, n], plus_x[2 * n + 1, n] = r, r
    minus_x[2 * n, n], minus_x[2 * n + 1, n] = r, -r
    even = n % 2 == 0
    sector_p = np.hstack([plus_x[:, even], minus_x[:, ~even]])
    sector_m = np.hstack([plus_x[:, ~even], minus_x[:, even]])
    return sector_p, sector_m


def diagonalize(H: HamiltonianMatrix, tracked=20) -> SpectralResult:
    """Full eigendecomposition with parity labels.

    The ``converged`` flag reports whether the lowest ``tracked`` eigenvectors
    keep less than 1e-8 of their weight in the top two Fock levels.

    Raises
    ------
    ConvergenceError
        If LAPACK fails, or if any eigenpair misses the residual or parity
        contract.
    """
    h = H.matrix
    # H commutes with parity, so each sector is diagonalized on its own;
    # this keeps near-degenerate doublets from mixing through round-off
    values, vectors, labels = [], [], []
    for sign, u in zip((1, -1), _parity_sectors(H.basis.n_max)):
        try:
            e, v = scipy.linalg.eigh(u.T @ h @ u, check_finite=True)
        except np.linalg.LinAlgError as exc:
            raise ConvergenceError(f"symmetric eigensolver failed: {exc}") from exc
        values.append(e)
        vectors.append(u @ v)
        labels.append(np.full(e.size, sign))
    evals = np.concatenate(values)
    order = np.argsort(evals, kind="stable")
    evals = evals[order]
    evecs = np.hstack(vectors)[:, order]
    parities = np.concatenate(labels)[order]

    resid = np.linalg.norm(h @ evecs - evecs * evals, axis=0)
    if resid.max() > RESIDUAL_TOL:
        k = int(np.argmax(resid))
        raise ConvergenceError(f"eigenpair {k} residual {resid[k]:.3e} exceeds {RESIDUAL_TOL}")
    perr = np.linalg.norm(apply_parity(evecs) - evecs * parities, axis=0)
    if perr.max() > PARITY_TOL:
        k = int(np.argmax(perr))
        raise ConvergenceError(f"eigenvector {k} is not a parity eigenstate (error {perr[k]:.3e})")

    k = min(tracked, evals.size)
    converged = bool(np.all(boundary_weight(evecs[:, :k]) < BOUNDARY_TOL))
    return SpectralResult(evals, evecs, parities, H.basis, converged, H.params)


def converged_spectrum(params: ModelParams, k=20, tol=1e-9, n_start=DEFAULT_N_MAX, n_cap=N_MAX_CAP):
    """Diagonalize with doubling ``n_max`` until the ``k`` lowest levels move
    by less than ``tol`` between rounds."""
    if k < 1 or not tol > 0:
        raise ValueError("need k >= 1 and tol > 0")
    n_max = max(2, n_start)
    previous = None
    while True:
        result = diagonalize(build_hamiltonian(params, BasisSpec(n_max)), tracked=k)
        if np.isinf(tol):
            return _mark_converged(result)
        if previous is not None:
            shift = np.abs(result.eigenvalues[:k] - previous.eigenvalues[:k])
            if shift.max() < tol and result.converged:
                return _mark_converged(result)
        if n_max >= n_cap:
            if previous is None:
                bad = 0
            else:
                bad = int(np.argmax(shift >= tol)) if shift.max() >= tol else int(
                    np.argmax(result.boundary_weights(k) >= BOUNDARY_TOL)
                )
            raise ConvergenceError(
                f"level {bad} not converged to {tol:g} within n_max cap {n_cap} "
                f"(Omega={params.omega_q}, lambda={params.coupling})"
            )
        previous = result
        n_max = min(2 * n_max, n_cap)


def _mark_converged(result):
    return SpectralResult(
        result.eigenvalues, result.eigenvectors, result.parities, result.basis, True, result.params
    )


def position_projections(state: JointState, grid=None, basis="z"):
    """Oscillator amplitudes along the two qubit basis states, on ``grid``.

    ``basis="z"`` gives ``(psi_+z, psi_-z)``; ``basis="x"`` gives
    ``(psi_+x, psi_-x)`` by the 45-degree qubit rotation.
    """
    state.require_normalized()
    grid = default_grid() if grid is None else np.asarray(grid, dtype=float)
    phi = specfun.ho_wavefunctions(state.basis.n_max, grid)
    plus = state.plus_z @ phi
    minus = state.minus_z @ phi
    if basis == "x":
        plus, minus = (plus + minus) / np.sqrt(2.0), (plus - minus) / np.sqrt(2.0)
    elif basis != "z":
        raise ValueError(f"basis must be 'z' or 'x', got {basis!r}")
    if not np.iscomplexobj(state.coefficients) or np.allclose(state.coefficients.imag, 0):
        plus, minus = plus.real, minus.real
    return plus, minus


def density_from_projections(plus, minus, grid):
    return DensityProfile(np.asarray(grid), np.abs(plus) ** 2 + np.abs(minus) ** 2)
