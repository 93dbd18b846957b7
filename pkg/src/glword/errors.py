"""Exception types shared across the package."""

from __future__ import annotations


class GlwordError(Exception):
    """Base class for all errors raised by this package."""


class WordSyntaxError(GlwordError, ValueError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class FieldError(GlwordError, ValueError):
    pass


class SupportError(GlwordError, ValueError):
    """A vector or generator is not supported on the forest it was given with."""


class BudgetExceeded(GlwordError, RuntimeError):
    """A search or enumeration hit its node budget. Partial results are discarded."""

    def __init__(self, budget: int, what: str = "search nodes"):
        self.budget = budget
        super().__init__(f"budget of {budget} {what} exceeded")


class PoleError(GlwordError, ZeroDivisionError):
    pass
