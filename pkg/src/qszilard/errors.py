"""Exception types raised by the engine."""


class SzilardError(Exception):
    """Base class for all engine errors."""


class DomainError(SzilardError, ValueError):
    """An argument lies outside the domain of the operation."""


class SeriesRangeError(SzilardError, ArithmeticError):
    """The requested regime is beyond what the series machinery certifies.

    Raised when the effective Boltzmann exponent is so small that the
    classical asymptotics (see :mod:`qszilard.limits`) should be used instead,
    or when a direct sum would exceed the configured term cap.
    """
