"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Bad user-supplied configuration: parameters, flags, or config file."""


class NumericError(RuntimeError):
    """A solver rejected the problem (Riccati failure, unusable spectrum)."""
