"""Exception hierarchy shared by every module.

The CLI maps each family onto its own exit status, so library code raises the
most specific class that applies.
"""

from __future__ import annotations


class MarkovError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class ValidationError(MarkovError, ValueError):
    """Input failed a structural or numerical validity check.

    ``check`` names the failed condition; ``where`` carries offending indices
    when there are any.
    """

    exit_code = 3

    def __init__(self, check: str, message: str, where: tuple | None = None):
        self.check = check
        self.where = where
        loc = f" at {where}" if where is not None else ""
        super().__init__(f"{check}: {message}{loc}")


class CapExceededError(MarkovError):
    """A scan hit its cap before reaching the target distance."""

    exit_code = 4

    def __init__(self, message: str, last_distance: float, curve=None):
        self.last_distance = last_distance
        self.curve = curve
        super().__init__(f"{message} (last distance {last_distance:.6g})")


class NumericalError(MarkovError, ArithmeticError):
    """An eigensolve or linear solve produced an unusable result."""

    exit_code = 5

    def __init__(self, message: str, residual: float | None = None):
        self.residual = residual
        extra = f" (residual {residual:.3g})" if residual is not None else ""
        super().__init__(message + extra)
