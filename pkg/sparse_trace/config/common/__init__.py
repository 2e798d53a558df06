from .families import (
    DilatedSimplexFamily,
    ExplicitFamily,
    RectangleFamily,
    TruncatedSimplexFamily,
    rectangle_points,
    simplex_points,
)
from .loader import fixture_path, load_settings, read_json, read_yaml, resolve_seed
from .standard import CommonSupportStandard, load_families

__all__ = [
    "CommonSupportStandard",
    "DilatedSimplexFamily",
    "ExplicitFamily",
    "RectangleFamily",
    "TruncatedSimplexFamily",
    "fixture_path",
    "load_families",
    "load_settings",
    "read_json",
    "read_yaml",
    "rectangle_points",
    "resolve_seed",
    "simplex_points",
]
