import logging
from pathlib import Path
from typing import Any, List, Optional, Union

from pydantic import ValidationError

from ...err import ConfigError, PreconditionError
from ..base.representation import SupportFamily
from ..base.standard import SupportStandard
from ..models.families import FamilyFile
from .families import FAMILY_TYPES, DilatedSimplexFamily, RectangleFamily, TruncatedSimplexFamily
from .loader import fixture_path, read_yaml

logger = logging.getLogger(__name__)

GALLERY_FILE = "gallery.yaml"


def load_families(path: Union[str, Path]) -> List[SupportFamily]:
    """
    Families defined in a YAML file with a top-level ``families`` list.

    Raises:
        ConfigError: when an entry does not validate or cannot be built.
    """
    raw = read_yaml(path)
    try:
        data = FamilyFile.model_validate(raw or {})
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(p) for p in first["loc"])
        raise ConfigError(f"Invalid family definition {where} in {path}: {first['msg']}", source=str(path)) from e

    families: List[SupportFamily] = []
    for entry in data.families:
        family = FAMILY_TYPES[entry.family](
            entry.name, **entry.params, description=entry.description, tags=tuple(entry.tags)
        )
        try:
            family.build()
        except PreconditionError as e:
            raise ConfigError(f"Family '{entry.name}' in {path} is malformed: {e.message}", source=str(path)) from e
        families.append(family)
    logger.debug(f"Loaded {len(families)} families from {path}")
    return families


class CommonSupportStandard(SupportStandard):
    """
    Registry with the built-in families and the gallery collections shipped
    with the package.
    """

    def __init__(self, extra_files: Optional[List[Union[str, Path]]] = None):
        if getattr(self, "_ready", False):
            for path in extra_files or []:
                self.load_file(path)
            return
        super().__init__(
            bindings={
                "dense": "dilated_simplex",
                "rectangle": "rectangles",
                "truncated": "truncated_simplex",
            }
        )
        self.add_family(DilatedSimplexFamily(description="Dense systems of the given degrees", tags=("builtin",)))
        self.add_family(RectangleFamily(description="Pairs of lattice rectangles", tags=("builtin",)))
        self.add_family(
            TruncatedSimplexFamily(description="Dilated simplices without the low degree monomials", tags=("builtin",))
        )
        self.load_file(fixture_path(GALLERY_FILE))
        for path in extra_files or []:
            self.load_file(path)

    def load_file(self, path: Union[str, Path]) -> "CommonSupportStandard":
        for family in load_families(path):
            self.add_family(family)
        return self

    def describe(self) -> List[dict[str, Any]]:
        return [f.serialize() for f in self.families]
