from __future__ import annotations

from .errors import (
    SparseTraceError,
    PreconditionError,
    CapacityError,
    HullError,
    NonIntegralError,
    PathFailureError,
    MonodromyError,
    ConfigError,
    SerializationError,
)

__all__ = [
    "SparseTraceError",
    "PreconditionError",
    "CapacityError",
    "HullError",
    "NonIntegralError",
    "PathFailureError",
    "MonodromyError",
    "ConfigError",
    "SerializationError",
]
