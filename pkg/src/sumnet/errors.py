"""Exception hierarchy shared by every sumnet module."""

from __future__ import annotations


class SumNetError(Exception):
    """Base class for all library errors."""


class CycleDetected(SumNetError):
    pass


class UnknownNode(SumNetError, KeyError):
    pass


class UnknownEdge(SumNetError, KeyError):
    pass


class NotThreeByThree(SumNetError):
    """Raised when a 3-source/3-terminal operation gets some other network."""


class FieldMismatch(SumNetError):
    pass


class DivisionByZero(SumNetError, ZeroDivisionError):
    pass


class InvalidField(SumNetError, ValueError):
    pass


class InvalidAlpha(SumNetError, ValueError):
    pass


class CodeShapeMismatch(SumNetError):
    """A code does not line up with the network it is applied to."""


class InputCodeInvalid(SumNetError):
    pass


class NoValidPaths(SumNetError):
    pass


class InvalidWitness(SumNetError):
    pass


class SearchSpaceTooLarge(SumNetError):
    def __init__(self, slots: int, cap: int) -> None:
        super().__init__(f"{slots} coefficient slots exceeds the cap of {cap}")
        self.slots = slots
        self.cap = cap


class GenerationFailed(SumNetError):
    pass


class ParseError(SumNetError):
    def __init__(self, message: str, line: int, column: int = 1) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class ValidationError(SumNetError):
    pass


class ClassMismatch(SumNetError):
    """Requested construction does not fit the network's solvability class."""
