"""Exception hierarchy shared by all modules."""


class BrachistoError(Exception):
    """Base class for errors raised by this package."""


class DimensionError(BrachistoError, ValueError):
    """States or matrices with incompatible dimensions."""


class ShapeError(BrachistoError, ValueError):
    """A multipartite shape not supported by the requested operation."""


class SubsystemIndexError(BrachistoError, IndexError):
    """Subsystem index outside ``range(len(shape))``."""


class DomainError(BrachistoError, ValueError):
    """Argument outside the domain of an operation."""


class DegeneratePathError(BrachistoError, ValueError):
    """Initial and final states coincide up to a global phase."""


class ConfigError(BrachistoError, ValueError):
    """Invalid experiment configuration."""
