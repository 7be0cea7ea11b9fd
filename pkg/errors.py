from __future__ import annotations

from typing import Any, Iterable, Optional

from constants import EXIT_MISMATCH, EXIT_SHAPE, EXIT_TRIVIAL, EXIT_USAGE


class QsecError(Exception):
    """Base class for every failure the library reports on purpose."""

    exit_code: int = EXIT_USAGE


class NotStronglyConnected(QsecError, ValueError):
    exit_code = EXIT_USAGE


class CyclicInput(QsecError, ValueError):
    exit_code = EXIT_USAGE

    def __init__(self, message: str, witness: Iterable[int] = ()):
        super().__init__(message)
        # Edge ids of a directed cycle, in order.
        self.witness: tuple[int, ...] = tuple(witness)


class Unreachable(QsecError, ValueError):
    exit_code = EXIT_USAGE

    def __init__(self, message: str, vertices: Iterable[int] = ()):
        super().__init__(message)
        self.vertices: tuple[int, ...] = tuple(sorted(vertices))


class DimensionMismatch(QsecError, ValueError):
    exit_code = EXIT_SHAPE


class ShapeMismatch(QsecError, ValueError):
    exit_code = EXIT_SHAPE


class WidthMismatch(QsecError, ValueError):
    exit_code = EXIT_SHAPE


class NotInvariant(QsecError, ArithmeticError):
    exit_code = EXIT_SHAPE

    def __init__(self, message: str, residual: float = float("nan")):
        super().__init__(message)
        self.residual = residual


class PathCountOverflow(QsecError, OverflowError):
    exit_code = EXIT_USAGE


class NotCentred(QsecError, ValueError):
    exit_code = EXIT_USAGE


class NotPositiveDefinite(QsecError, ValueError):
    exit_code = EXIT_SHAPE

    def __init__(self, message: str, condition: float = float("inf")):
        super().__init__(message)
        self.condition = condition


class ZeroSections(QsecError, ValueError):
    exit_code = EXIT_TRIVIAL


class InvalidCount(QsecError, ValueError):
    exit_code = EXIT_USAGE


class Infeasible(QsecError, ValueError):
    exit_code = EXIT_USAGE

    def __init__(self, message: str, constraint: str = "", violation: float = float("nan")):
        super().__init__(message)
        self.constraint = constraint
        self.violation = violation


class ZeroVector(QsecError, ValueError):
    exit_code = EXIT_USAGE


class ParseError(QsecError, ValueError):
    exit_code = EXIT_USAGE

    def __init__(self, message: str, location: Optional[Any] = None):
        text = f"{location}: {message}" if location is not None else message
        super().__init__(text)
        self.location = location


class OracleMismatch(QsecError):
    exit_code = EXIT_MISMATCH
