"""Exception hierarchy shared across the package."""

from __future__ import annotations


class OrthoperadError(Exception):
    """Base class for all errors raised by this package."""


class LengthMismatch(OrthoperadError, ValueError):
    pass


class UnknownObject(OrthoperadError, KeyError):
    def __str__(self) -> str:  # KeyError quotes its argument otherwise
        return str(self.args[0]) if self.args else ""


class InvalidSeedPair(OrthoperadError, ValueError):
    pass


class ProfileMismatch(OrthoperadError, ValueError):
    pass


class NotPerpCommutative(OrthoperadError, ValueError):
    pass


class AxiomViolation(OrthoperadError, ValueError):
    pass


class ActionNotCompatible(OrthoperadError, ValueError):
    pass


class BudgetExceeded(OrthoperadError, RuntimeError):
    """An enumeration outgrew its budget.

    ``partial`` carries whatever was computed before the budget ran out
    (a report object or ``None``).
    """

    def __init__(self, message: str, partial: object = None):
        super().__init__(message)
        self.partial = partial


class DslError(OrthoperadError, ValueError):
    """A problem in a DSL document, located at ``line``:``column`` (1-based)."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"{line}:{column}: {message}" if line else message)


class ParseError(DslError):
    def __init__(self, message: str, line: int = 0, column: int = 0, expected: tuple = ()):
        self.expected = tuple(expected)
        super().__init__(message, line, column)


class UndeclaredIdentifier(DslError):
    pass


class DuplicateDeclaration(DslError):
    pass
