"""Exception types shared across the package."""


class BasisLabError(Exception):
    """Base class for all basislab errors."""


class ConfigError(BasisLabError, ValueError):
    """Invalid space or run configuration (bad exponent, bad weights, ...)."""


class InputError(BasisLabError, ValueError):
    """Invalid runtime input (zero vector, non-finite entries, bad sizes)."""


class UnsupportedError(BasisLabError, RuntimeError):
    """Requested evaluation has no available path (e.g. zero search budget
    for a family without an analytic formula)."""
