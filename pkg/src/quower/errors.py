"""
Exceptions raised by the quower package.

Every exception derives from `QuowerError` and from the built-in exception a
caller would expect for the same situation, so ``except ValueError`` keeps
working for input problems.
"""

from __future__ import annotations


class QuowerError(Exception):
    """Base class of all quower exceptions."""


class InputError(QuowerError, ValueError):
    """An argument violates the documented precondition of an operation."""


class FieldMismatchError(InputError, TypeError):
    """Operands of a field operation belong to different fields."""


class DomainError(QuowerError, ZeroDivisionError):
    """An operation is undefined for its argument (inverse or logarithm of zero)."""


class UnsupportedError(QuowerError, NotImplementedError):
    """The hypotheses under which an algorithm is guaranteed to work do not hold."""


class InvariantError(QuowerError, RuntimeError):
    """An internal invariant failed. The message carries a dump of the state."""


class CoverFormatError(InputError):
    """
    A cover document could not be parsed.

    Attributes
    ----------
    line : int or None
        Line of the JSON text where decoding failed, if known.
    field : str or None
        Name of the offending document field, if known.
    """

    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field '{field}'")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
