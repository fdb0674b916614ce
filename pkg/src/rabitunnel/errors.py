class RegimeError(ValueError):
    """Parameters lie outside the double-well regime an operation requires."""


class ConvergenceError(RuntimeError):
    """A numerical procedure did not reach its accuracy contract."""


class TruncationError(ConvergenceError):
    """The Fock-space truncation is too small for the requested state."""

    def __init__(self, message, tail_mass=None):
        super().__init__(message)
        self.tail_mass = tail_mass


class ConfigError(ValueError):
    """Malformed or inconsistent run configuration."""
