"""Laboratory-scale estimates in SI units: tunneling time, Arrhenius
activation rate and the quantum/thermal crossover temperature.

``omega0_phys`` is the oscillator angular frequency in rad/s; the model
parameters stay dimensionless (units of omega_0).
"""

import math
from dataclasses import asdict, dataclass

from rabitunnel.errors import RegimeError
from rabitunnel.model import ModelParams
from rabitunnel.potential import barrier_stats
from rabitunnel.variational import tunneling_splitting

HBAR = 1.054571817e-34  # J s
K_B = 1.380649e-23  # J / K


@dataclass(frozen=True)
class PhysicalContext:
    omega0_phys: float
    T_env: float = 0.0
    quality_factor: float | None = None

    def __post_init__(self):
        if not self.omega0_phys > 0:
            raise ValueError(f"omega0_phys must be positive, got {self.omega0_phys}")
        if not self.T_env >= 0:
            raise ValueError(f"T_env must be non-negative, got {self.T_env}")


@dataclass(frozen=True)
class FeasibilityReport:
    t_Q: float
    Gamma_th: float
    T_c: float
    delta_V: float
    tau_th: float | None
    T_env: float
    quantum_dominated: bool

    @property
    def regime(self):
        return "quantum-tunneling-dominated" if self.quantum_dominated else "thermal-activation-dominated"

    def to_dict(self):
        d = asdict(self)
        d["regime"] = self.regime
        return d


@dataclass(frozen=True)
class Scenario:
    name: str
    params: ModelParams
    context: PhysicalContext


# 10 GHz qubit with a 3.3 GHz and a 100 MHz resonator; temperatures and Q
# are not fixed by the source estimates and are set to typical dilution-fridge values
PRESETS = {
    "dilatational-3GHz": Scenario(
        "dilatational-3GHz", ModelParams(3.0, 1.3), PhysicalContext(1e10 / 3.0, T_env=0.010)
    ),
    "flexural-100MHz": Scenario(
        "flexural-100MHz", ModelParams(100.0, 5.1), PhysicalContext(1e8, T_env=0.010, quality_factor=1e5)
    ),
}


def tunneling_time(params: ModelParams, ctx: PhysicalContext):
    """One barrier transit, ``t_Q = pi / delta_omega``, in seconds."""
    return math.pi / (tunneling_splitting(params) * ctx.omega0_phys)


def barrier_energy(params: ModelParams, ctx: PhysicalContext):
    """Barrier height above the well bottom of the lower band, in joules."""
    return barrier_stats(params).barrier_height * HBAR * ctx.omega0_phys


def arrhenius_rate(params: ModelParams, ctx: PhysicalContext, T=None):
    """``Gamma_th = omega_0/(2 pi) exp(-dV / k_B T)`` in 1/s; zero at ``T = 0``."""
    T = ctx.T_env if T is None else T
    if T < 0:
        raise ValueError(f"temperature must be non-negative, got {T}")
    dv = barrier_energy(params, ctx)
    attempt = ctx.omega0_phys / (2.0 * math.pi)
    if T == 0:
        return 0.0 if dv > 0 else attempt
    return attempt * math.exp(-dv / (K_B * T))


def crossover_temperature(params: ModelParams, ctx: PhysicalContext):
    """``T_c = -(dV/k_B) / ln(2 delta_omega / omega_0)``, in kelvin.

    Solves ``Gamma_th(T_c) = 1/t_Q``.
    """
    ratio = 2.0 * tunneling_splitting(params)
    if ratio >= 1.0:
        raise RegimeError(f"no crossover regime: 2*delta_omega/omega_0 = {ratio:.4g} >= 1")
    return -barrier_energy(params, ctx) / (K_B * math.log(ratio))


def thermal_decoherence_time(ctx: PhysicalContext):
    """``tau_th ~ hbar Q / (k_B T_env)``; None without Q or at zero temperature."""
    if ctx.quality_factor is None or ctx.T_env == 0:
        return None
    return HBAR * ctx.quality_factor / (K_B * ctx.T_env)


def feasibility_report(params: ModelParams, ctx: PhysicalContext) -> FeasibilityReport:
    t_c = crossover_temperature(params, ctx)
    return FeasibilityReport(
        t_Q=tunneling_time(params, ctx),
        Gamma_th=arrhenius_rate(params, ctx),
        T_c=t_c,
        delta_V=barrier_energy(params, ctx),
        tau_th=thermal_decoherence_time(ctx),
        T_env=ctx.T_env,
        quantum_dominated=ctx.T_env < t_c,
    )
