"""Exceptions and warnings raised by :mod:`fracstefan`."""


class InvalidParameter(ValueError):
    """A physical or numerical parameter violates its admissible range."""


class DegenerateProblem(InvalidParameter):
    """Zero driving difference (``B == C`` or ``D == C``): the front never moves."""


class DomainError(ValueError):
    """An argument lies outside the domain of an operation (``t <= 0``, ``beta < 0``, ...)."""


class NonConvergence(ArithmeticError):
    """A series hit ``max_terms`` without satisfying its stopping rule."""


class BracketFailure(ArithmeticError):
    """Bracket doubling for a monotone root search exceeded its cap."""


class ConsistencyFailure(ArithmeticError):
    """An assembled solution fails its own postcondition checks."""


class PrecisionLoss(RuntimeWarning):
    """Cancellation in an alternating series has eaten most of the significant digits."""


class RangeWarning(UserWarning):
    """Arguments lie outside the parameter box the library is validated on."""
