"""Exception types raised by :mod:`oscquad`."""


class OscquadError(Exception):
    """Base class for all package errors."""


class PreconditionError(OscquadError, ValueError):
    """An operation was called outside its domain."""


class DegreeOverflowError(PreconditionError):
    """Requested Bernoulli degree exceeds the precomputed table."""


class DerivativeOrderError(PreconditionError):
    """An oracle was asked for a derivative it does not provide."""


class InvalidBudgetError(PreconditionError):
    """The information budget ``n`` is not admissible for the algorithm."""


class ZeroFrequencyError(PreconditionError):
    """The algorithm is not defined for ``k = 0``."""


class SupportError(PreconditionError):
    """A bump support does not fit inside the unit interval."""


class SpecParseError(OscquadError, ValueError):
    """A function mini-language string could not be parsed."""


class QuadratureError(OscquadError, RuntimeError):
    """Adaptive quadrature did not reach the requested tolerance."""


class DivergentNormError(OscquadError, ArithmeticError):
    """An ``s = inf`` norm series showed no decay within the term cap."""


class NonFiniteIntegrandError(QuadratureError):
    """The integrand overflowed or produced NaN."""
