"""Shared exception types."""


class EngineError(Exception):
    """Base class for failures inside the computation engine."""


class DimensionMismatch(EngineError, ValueError):
    """An exponent vector or matrix row has the wrong length."""


class RankDeficientOrder(EngineError, ValueError):
    """Order matrix is not of full rank over the rationals."""


class UndefinedLead(EngineError, ValueError):
    """Leading data requested where no usable leading term exists."""


class DegreeError(EngineError, ValueError):
    """A degree argument is out of range."""


class ExponentOverflow(EngineError, OverflowError):
    """Exponent arithmetic exceeded the machine-width guard."""


class SizeCapExceeded(EngineError, ValueError):
    """A guarded combinatorial size limit was exceeded."""


class ParseError(EngineError, ValueError):
    """Input text could not be parsed; carries the offending position."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position
