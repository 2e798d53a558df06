from __future__ import annotations

from .base import SupportFamily, SupportStandard
from .common import CommonSupportStandard, fixture_path, load_families, load_settings, read_json, resolve_seed
from .models import Settings, SolverConfig, TraceTestConfig, TrackerConfig

__all__ = [
    "SupportFamily",
    "SupportStandard",
    "CommonSupportStandard",
    "fixture_path",
    "load_families",
    "load_settings",
    "read_json",
    "resolve_seed",
    "Settings",
    "SolverConfig",
    "TraceTestConfig",
    "TrackerConfig",
]
