"""
loader.py - Reading settings, seeds and input files.

Settings come from an optional YAML file with the top-level keys ``tracker``,
``solver`` and ``trace_test``, merged with overrides (usually CLI flags). A
``tracker`` block at the top level is the default for the nested ones.
"""

from __future__ import annotations

import json
import logging
import os
from importlib import resources
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Union

import yaml
from pydantic import ValidationError

from ...err import ConfigError, SerializationError
from ..models.settings import Settings

logger = logging.getLogger(__name__)

SEED_VARIABLE = "SPARSETRACE_SEED"

PathLike = Union[str, Path]


def _merge(base: Dict[str, Any], extra: Mapping[str, Any]) -> Dict[str, Any]:
    out = dict(base)
    for key, value in extra.items():
        if isinstance(value, Mapping) and isinstance(out.get(key), Mapping):
            out[key] = _merge(dict(out[key]), value)
        else:
            out[key] = value
    return out


def read_yaml(path: PathLike) -> Any:
    """Parse a YAML file; syntax errors carry the file position."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"Cannot read {path}: {e.strerror}", source=str(path)) from e
    try:
        return yaml.safe_load(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        raise SerializationError(
            f"Malformed YAML in {path}",
            source=str(path),
            line=mark.line + 1 if mark else None,
            column=mark.column + 1 if mark else None,
        ) from e


def read_json(path: PathLike) -> Any:
    """Parse a JSON file; syntax errors carry the file position."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise SerializationError(f"Cannot read {path}: {e.strerror}", source=str(path)) from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SerializationError(f"Malformed JSON in {path}: {e.msg}", source=str(path), line=e.lineno, column=e.colno) from e


def load_settings(path: Optional[PathLike] = None, overrides: Optional[Mapping[str, Any]] = None) -> Settings:
    """
    Validated settings from an optional YAML file and overrides.

    Args:
        path (Optional[PathLike]): YAML file; defaults apply when omitted.
        overrides (Optional[Mapping[str, Any]]): Nested mapping merged on top
            of the file, e.g. ``{"tracker": {"jobs": 4}}``.

    Returns:
        Settings: Frozen settings with the tracker block propagated.

    Raises:
        ConfigError: when the file or the merged values do not validate.
    """
    raw: Dict[str, Any] = {}
    if path is not None:
        loaded = read_yaml(path)
        if loaded is not None and not isinstance(loaded, Mapping):
            raise ConfigError(f"Settings file {path} must hold a mapping.", source=str(path))
        raw = dict(loaded or {})
    if overrides:
        raw = _merge(raw, overrides)

    tracker = raw.get("tracker")
    if isinstance(tracker, Mapping):
        for section in ("solver", "trace_test"):
            block = dict(raw.get(section) or {})
            block["tracker"] = _merge(dict(tracker), block.get("tracker") or {})
            raw[section] = block
    try:
        settings = Settings.model_validate(raw)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(p) for p in first["loc"])
        raise ConfigError(f"Invalid setting {where}: {first['msg']}") from e
    logger.debug(f"Settings loaded from {path or 'defaults'}")
    return settings


def resolve_seed(explicit: Optional[int] = None) -> int:
    """Explicit seed, else ``SPARSETRACE_SEED``, else 0."""
    if explicit is not None:
        return int(explicit)
    value = os.environ.get(SEED_VARIABLE)
    if value is None or value.strip() == "":
        return 0
    try:
        return int(value)
    except ValueError as e:
        raise ConfigError(f"{SEED_VARIABLE}={value!r} is not an integer.") from e


def fixture_path(name: str) -> Path:
    """Path of a file shipped in ``sparse_trace/examples``."""
    return Path(str(resources.files("sparse_trace.examples").joinpath(name)))
