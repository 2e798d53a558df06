from typing import Any, Dict, List, Literal

from pydantic import BaseModel, ConfigDict, field_validator


class FamilyEntry(BaseModel):
    """
    Pydantic model to validate one support family of a YAML definition file.
    """

    model_config = ConfigDict(extra="forbid")

    name: str
    family: Literal["dilated_simplex", "rectangles", "truncated_simplex", "explicit"]
    params: Dict[str, Any] = {}
    description: str = ""
    tags: List[str] = []

    @field_validator("name")
    def validate_name(cls, value):
        if not value.strip():
            raise ValueError("The family 'name' must not be empty.")
        return value


class FamilyFile(BaseModel):
    """
    Pydantic model to validate a family definition file.
    """

    model_config = ConfigDict(extra="forbid")

    families: List[FamilyEntry]

    @field_validator("families")
    def validate_unique(cls, value):
        names = [f.name for f in value]
        if len(set(names)) != len(names):
            raise ValueError("Family names must be unique.")
        return value
