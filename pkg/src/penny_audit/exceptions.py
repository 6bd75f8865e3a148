"""Exception classes for penny-audit."""

from __future__ import annotations


class PennyError(Exception):
    """Common base for every error raised by penny-audit."""

    def __init__(self, message: str) -> None:
        self.message = message
        super().__init__(message)


class ValidationError(PennyError):
    """Raised when a validator or clean() rejects a value."""


class FieldError(PennyError):
    """Raised when field configuration is invalid."""


class FormError(PennyError):
    """Raised for form definition errors or errors aimed at unknown fields."""


class InputError(PennyError):
    """Raised when an input document cannot be parsed.

    ``field`` names the offending field so diagnostics can point at it.
    """

    def __init__(self, field: str, message: str) -> None:
        self.field = field
        super().__init__(f"{field}: {message}")


class GeometryError(PennyError):
    """Raised for degenerate point sets (coincident points, too few points)."""


class HypothesesUnmet(PennyError):
    """Raised when an operation that presumes general position does not get it."""

    def __init__(self, message: str = "hypotheses unmet: general position fails") -> None:
        super().__init__(message)


class ClassificationError(PennyError):
    """Raised when an edge cannot be given exactly one type label."""

    def __init__(self, reason: str) -> None:
        self.reason = reason
        super().__init__(f"classification undefined: {reason}")


class DomainError(PennyError):
    """Raised when an analytic function is evaluated outside its domain."""


class GenerationError(PennyError):
    """Raised when a generator cannot produce the requested instance."""
