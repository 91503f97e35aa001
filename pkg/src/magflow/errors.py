"""Exception types raised by magflow."""
from __future__ import annotations

from typing import Optional, Sequence


class MagflowError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(MagflowError, ValueError):
    """Vectors or matrices with incompatible dimensions."""


class RegularityError(MagflowError, ValueError):
    """Gradient (or a denominator built from it) vanishes; the level set is not regular here."""


class PreconditionError(MagflowError, ValueError):
    """An input violates an operation's precondition (off the surface, not tangent, wrong mode)."""


class DomainError(MagflowError, ValueError):
    """A coordinate left the domain on which the system is defined."""


class ConfigError(MagflowError, ValueError):
    def __init__(self, field: str, message: str):
        """
        Invalid run configuration.

        :param field: dotted path of the offending field (e.g. 'system.a').
        :param message: description of the problem.
        """
        self.field: str = field
        super().__init__(f"{field}: {message}")


class NumericalFailure(MagflowError, ArithmeticError):
    def __init__(self, message: str, time: Optional[float] = None, trace: Sequence[float] = ()):
        """
        Non-finite values, non-converging Newton projection or a failed integration step.

        :param message: description of the failure.
        :param time: (optional) simulation time at which the failure happened.
        :param trace: (optional) residual history of the failing iteration.
        """
        self.time: Optional[float] = time
        self.trace: tuple[float, ...] = tuple(float(x) for x in trace)
        if time is not None:
            message = f"{message} (t={time!r})"
        if self.trace:
            message = f"{message}; residual trace: {', '.join(f'{x:.3e}' for x in self.trace)}"
        super().__init__(message)
