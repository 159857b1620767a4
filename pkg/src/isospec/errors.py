class IsospecError(Exception):
    """Base class for all errors raised by isospec."""


class InvalidInputError(IsospecError, ValueError):
    """Non-finite, mis-shaped or asymmetric input."""


class DomainError(IsospecError, ValueError):
    """A parameter lies outside the domain where a quantity is defined."""


class SingularCoefficientError(DomainError):
    """The leaf parameter sits on a focal value (b = 0 or b = 1)."""


class DegenerateInputError(IsospecError, ValueError):
    """Shape coordinates requested for a scalar (zero) matrix."""
