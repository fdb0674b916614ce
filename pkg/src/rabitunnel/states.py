from dataclasses import dataclass, field

import numpy as np

from rabitunnel.model import BasisSpec

NORM_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class JointState:
    """Qubit-oscillator state as a complex vector over the interleaved
    ``|n, +z>, |n, -z>`` basis."""

    coefficients: np.ndarray = field(repr=False)
    basis: BasisSpec

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=complex)
        if c.shape != (self.basis.dim,):
            raise ValueError(f"expected {self.basis.dim} coefficients, got shape {c.shape}")
        object.__setattr__(self, "coefficients", c)

    @classmethod
    def from_branches(cls, plus_z, minus_z):
        """Assemble from the oscillator amplitudes on ``|+z>`` and ``|-z>``."""
        plus_z = np.asarray(plus_z, dtype=complex)
        c = np.empty(2 * plus_z.size, dtype=complex)
        c[0::2] = plus_z
        c[1::2] = minus_z
        return cls(c, BasisSpec(plus_z.size))

    @property
    def plus_z(self):
        return self.coefficients[0::2]

    @property
    def minus_z(self):
        return self.coefficients[1::2]

    @property
    def norm(self):
        return float(np.linalg.norm(self.coefficients))

    def normalized(self):
        return JointState(self.coefficients / self.norm, self.basis)

    def inner(self, other):
        """``<self|other>``."""
        if other.basis != self.basis:
            raise ValueError(f"basis mismatch: {self.basis} vs {other.basis}")
        return complex(np.vdot(self.coefficients, other.coefficients))

    def require_normalized(self, tol=1e-6):
        if abs(self.norm - 1.0) > tol:
            raise ValueError(f"state is not normalized (norm - 1 = {self.norm - 1.0:.3e})")
