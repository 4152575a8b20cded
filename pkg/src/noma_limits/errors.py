"""Exception hierarchy shared by every module in the package."""


class NomaLimitsError(Exception):
    """Base class for every error this package raises deliberately."""


class DomainError(NomaLimitsError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class NonConvergenceError(NomaLimitsError, ArithmeticError):
    """An iterative routine exhausted its evaluation budget."""


class BadBracketError(NomaLimitsError, ValueError):
    """Root-bracket endpoints do not enclose a sign change."""


class NoSolutionError(NomaLimitsError, ValueError):
    """The requested equation has no solution in the admissible range."""


class DegenerateRateError(NomaLimitsError, ZeroDivisionError):
    """A conversion would divide by a rate that is exactly zero."""


class UnsupportedSchemeError(NomaLimitsError, ValueError):
    """No closed form is implemented for this spreading/fading/detector combination."""


class FixedPointError(NomaLimitsError, ArithmeticError):
    """The interference fixed point is not bracketed by a unique sign change."""


class FactorizationError(NomaLimitsError, ArithmeticError):
    """A Hermitian factorization failed; the draw is reported, never retried."""
