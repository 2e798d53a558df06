from __future__ import annotations

from .representation import SupportFamily
from .standard import SupportStandard

__all__ = [
    "SupportFamily",
    "SupportStandard",
]
