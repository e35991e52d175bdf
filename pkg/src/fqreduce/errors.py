"""Exception hierarchy shared by every module."""


class FqReduceError(Exception):
    """Base class for all library errors."""


class NotPrime(FqReduceError, ValueError):
    pass


class TooLarge(FqReduceError, ValueError):
    pass


class DivisionByZero(FqReduceError, ZeroDivisionError):
    pass


class EmptyRange(FqReduceError, ValueError):
    pass


class FieldMismatch(FqReduceError, ValueError):
    pass


class BothZero(FqReduceError, ValueError):
    pass


class NotMonic(FqReduceError, ValueError):
    pass


class NotSquarefree(FqReduceError, ValueError):
    pass


class BadInput(FqReduceError, ValueError):
    pass


class InternalError(FqReduceError, RuntimeError):
    pass


class OracleLied(FqReduceError):
    pass


class OracleInconsistent(FqReduceError):
    pass


class LoopBudgetExceeded(FqReduceError, RuntimeError):
    pass


class DegenerateDifference(FqReduceError, ArithmeticError):
    """f - chi_f vanished: the Carlitz degree estimate has no answer."""


class ValidationFailed(FqReduceError):
    pass


class StuckError(FqReduceError, RuntimeError):
    pass


class InsufficientData(FqReduceError, ValueError):
    pass


class ParseError(FqReduceError, ValueError):
    pass


class FallbackUsed(FqReduceError):
    """A randomized reduction had to fall back to the reference engine."""
