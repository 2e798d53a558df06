from __future__ import annotations

from .support import SupportsPayload

__all__ = ["SupportsPayload"]
