"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Invalid run configuration or circuit definition."""


class NumericalError(RuntimeError):
    """Numerical failure, e.g. an ill-conditioned covariance inverse."""


class ResourceCapError(RuntimeError):
    """A configured resource cap (firing count, photon budget) was exceeded."""
