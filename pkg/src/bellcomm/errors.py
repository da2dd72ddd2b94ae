"""Exception types shared across the package."""


class BellcommError(Exception):
    """Base class for all package errors."""


class DomainError(BellcommError):
    """An argument lies outside the mathematical domain of the function."""


class ConfigurationError(BellcommError):
    """A protocol or run configuration is internally inconsistent."""


class DegenerateResultantError(BellcommError):
    """The resultant vector is numerically zero, so its sign is undefined."""


class BoundaryAmbiguityError(BellcommError):
    """A closed-form law is ambiguous exactly at this input."""


class NumericError(BellcommError):
    """A numerical routine failed to reach the requested accuracy."""


class InvariantViolationError(BellcommError):
    """A computed quantity broke a bound that should hold by construction."""
