"""
errors.py - Exception hierarchy of the toolkit.

Every error raised on purpose by the package derives from SparseTraceError so
callers (and the CLI exit-code mapping) can tell a refused input or a numerical
abort apart from a genuine bug.
"""

from __future__ import annotations

from typing import Any, Optional, Sequence


class SparseTraceError(Exception):
    """Base class for all toolkit errors."""

    exit_code: int = 2

    def __init__(self, message: str, **context: Any):
        super().__init__(message)
        self.message = message
        self.context = context

    def to_dict(self) -> dict:
        return {
            "error": type(self).__name__,
            "message": self.message,
            **{k: v for k, v in self.context.items() if _jsonable(v)},
        }

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.message!r})"


class PreconditionError(SparseTraceError):
    """
    An operation was called outside its contract.

    Args:
        message (str): Human readable description.
        code (str): Stable identifier of the violated precondition, e.g.
            ``"lacunary"`` or ``"not_abundant"``.
    """

    def __init__(self, message: str, code: str, **context: Any):
        super().__init__(message, code=code, **context)
        self.code = code


class CapacityError(SparseTraceError):
    """Input exceeds a documented size cap (dimension limits)."""

    def __init__(self, message: str, limit: int, got: int):
        super().__init__(message, limit=limit, got=got)
        self.limit = limit
        self.got = got


class HullError(SparseTraceError):
    """Exact verification of a convex hull facet failed."""


class NonIntegralError(SparseTraceError):
    """A monomial map sent a lattice point outside the integer lattice."""


class PathFailureError(SparseTraceError):
    """
    Path tracking failed during a trace test.

    The run is aborted instead of reporting a verdict. ``recommendation`` is
    ``"resample_g"``: rerun with a different seed so a new system G is drawn.
    """

    def __init__(
        self,
        message: str,
        outcomes: Optional[Sequence[Any]] = None,
        recommendation: str = "resample_g",
        **context: Any,
    ):
        super().__init__(message, recommendation=recommendation, **context)
        self.outcomes = list(outcomes or [])
        self.recommendation = recommendation


class MonodromyError(SparseTraceError):
    """A monodromy loop failed to close or its endpoints could not be matched."""


class ConfigError(SparseTraceError):
    """Configuration could not be read or validated."""


class SerializationError(SparseTraceError):
    """
    Malformed JSON or YAML input.

    ``line`` and ``column`` point at the offending position when known.
    """

    def __init__(self, message: str, source: str = "<input>", line: Optional[int] = None, column: Optional[int] = None):
        super().__init__(message, source=source, line=line, column=column)
        self.source = source
        self.line = line
        self.column = column


def _jsonable(value: Any) -> bool:
    return value is None or isinstance(value, (str, int, float, bool, list, tuple, dict))
