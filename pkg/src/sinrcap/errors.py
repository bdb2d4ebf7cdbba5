"""Exception types shared across the package."""


class SinrCapError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(SinrCapError, ValueError):
    """Invalid configuration: bad parameter ranges, roles, or missing inputs."""


class DomainError(SinrCapError, ValueError):
    """A mathematical operation was evaluated outside its domain."""
