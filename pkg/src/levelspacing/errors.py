"""Exception hierarchy for levelspacing.

The concrete errors also subclass ``ValueError`` or ``RuntimeError`` so code
that catches the builtins keeps working.
"""

from typing import Any


class LevelSpacingError(Exception):
    """Base class for all levelspacing errors."""


class InvalidArgumentError(LevelSpacingError, ValueError):
    """An argument is outside the documented domain of an operation."""


class NumericalFailureError(LevelSpacingError, RuntimeError):
    """A computation produced a non-finite or inconsistent result."""

    def __init__(self, message: str, context: dict[str, Any] | None = None):
        self.context = dict(context or {})
        if self.context:
            details = ", ".join(f"{k}={v}" for k, v in self.context.items())
            message = f"{message} ({details})"
        super().__init__(message)


class FitFailureError(NumericalFailureError):
    """The lambda fit could not bracket a minimum."""


class CacheCorruptionError(LevelSpacingError, RuntimeError):
    """Cached gap curves do not recompute bit-identically."""

    def __init__(self, message: str, keys: list[str]):
        self.keys = list(keys)
        super().__init__(f"{message}: {', '.join(self.keys)}")


class AcceptanceFailureError(LevelSpacingError, RuntimeError):
    """One or more reproduction checks fell outside tolerance."""

    def __init__(self, message: str, report: list[dict[str, Any]]):
        self.report = list(report)
        super().__init__(message)
