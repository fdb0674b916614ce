"""Parity-doublet variational approximation.

The trial states displace the oscillator by ``+-alpha0`` and rotate the qubit
by ``theta0`` (branch with ``sin(theta0) >= 0``, so ``alpha0 <= 0``). Their
even and odd combinations under parity give the doublet states ``Phi_{+-,N}``.
"""

import math
from dataclasses import dataclass

import numpy as np

from rabitunnel import specfun
from rabitunnel.errors import RegimeError, TruncationError
from rabitunnel.model import BasisSpec, ModelParams
from rabitunnel.states import JointState

TAIL_TOL = 1e-8


@dataclass(frozen=True)
class VariationalSolution:
    epsilon: float
    theta0: float
    alpha0: float

    @property
    def overlap_arg(self):
        """``4 alpha0^2``."""
        return 4.0 * self.alpha0**2

    def overlap(self, N):
        """``exp(-2 alpha0^2) L_N(4 alpha0^2)``."""
        return specfun.displaced_overlap(N, self.alpha0)

    def normalization(self, N, sign):
        """``N_{+-,N} = sqrt(1 -+ eps * overlap)``."""
        return math.sqrt(1.0 - _sign(sign) * self.epsilon * self.overlap(N))


def _sign(sign):
    if sign in ("+", 1, +1.0):
        return 1
    if sign in ("-", -1, -1.0):
        return -1
    raise ValueError(f"sign must be '+' or '-', got {sign!r}")


def require_double_well(params: ModelParams):
    if not params.double_well:
        raise RegimeError(
            f"single-minimum regime: epsilon = Omega/(4 lambda^2) = {params.epsilon:.6g} >= 1 "
            f"(Omega={params.omega_q}, lambda={params.coupling}); the only minimum is alpha=0, theta=pi"
        )


def variational_params(params: ModelParams) -> VariationalSolution:
    require_double_well(params)
    eps = params.epsilon
    theta0 = math.acos(-eps)
    alpha0 = -params.coupling * math.sqrt(1.0 - eps**2)
    return VariationalSolution(eps, theta0, alpha0)


def mean_energy(alpha, theta, params: ModelParams):
    """Energy of the product trial state ``|alpha> (x) (cos th/2 |+x> + sin th/2 |-x>)``."""
    return 0.5 * params.omega_q * np.cos(theta) + 2.0 * params.coupling * alpha * np.sin(theta) + alpha**2


def minimum_energy(params: ModelParams):
    """``-(lambda^2)(1 + eps^2)``, the degenerate value at ``(+-alpha0, +-theta0)``."""
    sol = variational_params(params)
    return -params.coupling**2 * (1.0 + sol.epsilon**2)


def displaced_number_coefficients(alpha, N, n_max):
    """Fock amplitudes of ``D(alpha)|N>`` for real ``alpha``, truncated to ``n_max``.

    Built from the coherent state via ``D|N> = (a^dag - alpha) D|N-1> / sqrt(N)``.
    Each step only feeds index ``m`` from ``m-1`` and ``m``, so truncation
    never contaminates the retained entries.
    """
    m = np.arange(n_max)
    v = np.empty(n_max)
    v[0] = math.exp(-0.5 * alpha**2)
    for k in range(1, n_max):
        v[k] = v[k - 1] * alpha / math.sqrt(k)
    sqrt_m = np.sqrt(m[1:])
    for k in range(1, N + 1):
        w = -alpha * v
        w[1:] += sqrt_m * v[:-1]
        v = w / math.sqrt(k)
    return v


def _qubit_components(theta0, side):
    """z-basis amplitudes of ``cos(th/2)|+x> +- sin(th/2)|-x>``."""
    c, s = math.cos(0.5 * theta0), math.sin(0.5 * theta0)
    if side == "L":
        return (c + s) / math.sqrt(2.0), (c - s) / math.sqrt(2.0)
    if side == "R":
        return (c - s) / math.sqrt(2.0), (c + s) / math.sqrt(2.0)
    raise ValueError(f"side must be 'L' or 'R', got {side!r}")


def displaced_joint_state(params: ModelParams, N, side, basis: BasisSpec) -> JointState:
    """``D(+-alpha0)|N> (x) (cos th0/2 |+x> +- sin th0/2 |-x>)``; ``L`` takes
    the upper signs."""
    sol = variational_params(params)
    alpha = sol.alpha0 if side == "L" else -sol.alpha0
    qp, qm = _qubit_components(sol.theta0, side)
    osc = displaced_number_coefficients(alpha, N, basis.n_max)
    tail = 1.0 - float(osc @ osc)
    if tail > TAIL_TOL:
        raise TruncationError(
            f"n_max={basis.n_max} too small for D({alpha:.4g})|{N}>: tail mass {tail:.3e} > {TAIL_TOL}",
            tail_mass=tail,
        )
    return JointState.from_branches(qp * osc, qm * osc)


def parity_doublet_state(params: ModelParams, N, sign, basis: BasisSpec) -> JointState:
    """``(|psi_{N,L}> +- |psi_{N,R}>) / (sqrt(2) N_{+-,N})``, parity ``+-(-1)^N``."""
    s = _sign(sign)
    sol = variational_params(params)
    left = displaced_joint_state(params, N, "L", basis)
    right = displaced_joint_state(params, N, "R", basis)
    norm = math.sqrt(2.0) * sol.normalization(N, s)
    return JointState((left.coefficients + s * right.coefficients) / norm, basis)


def doublet_energies(params: ModelParams, N, simplified=False):
    """``(E_-, E_+)`` of doublet ``N``.

    The full form divides by the normalization ``1 -+ eps*overlap``;
    ``simplified=True`` keeps only the first order in the overlap factor.
    """
    sol = variational_params(params)
    eps, ov = sol.epsilon, sol.overlap(N)
    om, lam2 = params.omega_q, params.coupling**2
    base = N - lam2 * (1.0 - eps**2)
    if simplified:
        centre = base - 0.5 * om * eps
        half = 0.5 * om * (1.0 - eps**2) * ov
        return centre - half, centre + half
    e_minus = -0.5 * om * (eps + ov) / (1.0 + eps * ov) + base
    e_plus = -0.5 * om * (eps - ov) / (1.0 - eps * ov) + base
    return e_minus, e_plus


@dataclass(frozen=True)
class DoubletRow:
    N: int
    e_minus: float
    e_plus: float
    norm_minus: float
    norm_plus: float

    @property
    def splitting(self):
        return self.e_plus - self.e_minus


def doublet_table(params: ModelParams, count, simplified=False):
    sol = variational_params(params)
    rows = []
    for N in range(count):
        em, ep = doublet_energies(params, N, simplified)
        rows.append(DoubletRow(N, em, ep, sol.normalization(N, -1), sol.normalization(N, +1)))
    return rows


def approximate_levels(params: ModelParams, count, simplified=False):
    """Lowest ``count`` values of ``E_{+-,N}`` as ``(energy, sign, N)`` sorted
    by energy."""
    levels = []
    for row in doublet_table(params, count, simplified):
        levels.append((row.e_minus, -1, row.N))
        levels.append((row.e_plus, +1, row.N))
    levels.sort()
    return levels[:count]


def tunneling_splitting(params: ModelParams, simplified=False):
    """Ground-doublet frequency ``E_{+,0} - E_{-,0}``.

    Full form ``Omega (1-eps^2) e^{-2a^2} / (1 - eps^2 e^{-4a^2})``;
    ``simplified`` drops the denominator.
    """
    sol = variational_params(params)
    eps, g = sol.epsilon, math.exp(-2.0 * sol.alpha0**2)
    leading = params.omega_q * (1.0 - eps**2) * g
    if simplified:
        return leading
    return leading / (1.0 - eps**2 * g**2)


def fidelity(a: JointState, b: JointState):
    """``|<a|b>|``."""
    return abs(a.inner(b))


def expectation(state: JointState, matrix):
    c = state.coefficients
    return float(np.vdot(c, matrix @ c).real)
