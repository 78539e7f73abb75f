"""Exception types raised across the package.

Unsolvable instances are *not* errors: operations that may meet one return
``None`` instead.
"""

from __future__ import annotations


class SrOptError(Exception):
    """Base class for every error raised by sropt."""


class ValidationError(SrOptError, ValueError):
    """Input failed a structural check."""


class ParseError(ValidationError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DuplicateEntry(ParseError):
    pass


class MissingAgent(ParseError):
    pass


class OddAgentCount(ParseError):
    pass


class SelfReference(ParseError):
    pass


class NotPerfectMatching(ValidationError):
    pass


class InvalidCosts(ValidationError):
    pass


class CycleDetected(ValidationError):
    pass


class DualComparable(ValidationError):
    pass


class MirrorAxiomViolated(ValidationError):
    pass


class NotComplete(ValidationError):
    pass


class NotClosed(ValidationError):
    pass


class NotInBase(ValidationError):
    pass


class NotThreeRegular(ValidationError):
    pass


class EmptyListFailure(SrOptError):
    """Eliminating a rotation emptied some preference list."""


class LimitError(SrOptError):
    """A configured search budget or enumeration cap was hit."""


class BudgetExceeded(LimitError):
    pass


class CapExceeded(LimitError):
    pass


class TooLarge(LimitError):
    pass


class GiveUp(LimitError):
    pass
