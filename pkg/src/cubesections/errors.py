"""Exception hierarchy shared by every module of the package."""


class CubeSectionsError(Exception):
    """Base class for all errors raised by ``cubesections``."""


class DomainError(CubeSectionsError, ValueError):
    """An argument lies outside the domain of the operation."""


class RangeError(CubeSectionsError, OverflowError):
    """A result cannot be represented as a finite 64-bit float."""


class IntegrationError(CubeSectionsError, ArithmeticError):
    """Adaptive quadrature did not reach the requested tolerance.

    The partial value and its error estimate are kept on the exception so
    that callers can decide whether the result is still usable.
    """

    def __init__(self, message, value=None, abs_error_estimate=None, evaluations=None):
        super().__init__(message)
        self.value = value
        self.abs_error_estimate = abs_error_estimate
        self.evaluations = evaluations


class LPSolverError(CubeSectionsError, ArithmeticError):
    """The simplex solver exceeded its iteration limit."""


class DegenerateInputError(CubeSectionsError, ValueError):
    """A measure-zero degenerate configuration was encountered."""


class DataQualityError(CubeSectionsError, RuntimeError):
    """Too many Monte Carlo samples had to be discarded."""
