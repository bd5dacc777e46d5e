"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A physical parameter violates its domain (e.g. T <= 0)."""


class ConfigError(ParameterError):
    """A configuration file is malformed or contains unknown keys."""


class NumericalError(RuntimeError):
    """A numerical routine failed (eigensolver, propagation, ...)."""


class DetailedBalanceError(NumericalError):
    """The symmetrized generator is not symmetric within tolerance."""


class PurePhotonModeError(ValueError):
    """Molecular participation ratio requested for a mode with no
    molecular weight."""
