"""Exception types shared across the library."""
from __future__ import annotations


class PowexError(Exception):
    """Base class for all library errors."""


class DomainError(PowexError, ValueError):
    """An argument is outside the mathematical domain of an operation.

    Carries ``x_min`` when the violated constraint is the support boundary
    c*x + d > 0, so callers can report the admissible range.
    """

    def __init__(self, message: str, x_min: float | None = None):
        super().__init__(message)
        self.x_min = x_min


class ResourceError(PowexError):
    """A request would exceed the configured computational budget."""


class InsufficientDataError(PowexError):
    """Too few usable points remain for the requested fit."""


class InternalError(PowexError):
    """An internal contract was violated (e.g. table arity mismatch)."""
