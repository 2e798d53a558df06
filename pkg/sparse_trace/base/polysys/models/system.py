import math
from typing import List

from pydantic import BaseModel, field_validator, model_validator

from ....core.supports.models.support import SupportsPayload


class ComplexPayload(BaseModel):
    """A complex number as ``{"re": ..., "im": ...}``."""

    re: float
    im: float

    @field_validator("re", "im")
    def validate_finite(cls, value):
        if not math.isfinite(value):
            raise ValueError("Complex parts must be finite.")
        return value


class SystemPayload(BaseModel):
    """
    Pydantic model to validate the JSON form of a sparse system.
    """

    collection: SupportsPayload
    coefficients: List[List[ComplexPayload]]

    @model_validator(mode="after")
    def validate_shape(self):
        if len(self.coefficients) != len(self.collection.supports):
            raise ValueError("Need one coefficient row per support.")
        for i, (support, row) in enumerate(zip(self.collection.supports, self.coefficients)):
            if len(support) != len(row):
                raise ValueError(f"Support {i} has {len(support)} points but {len(row)} coefficients.")
        return self


class PointPayload(BaseModel):
    """A torus point as a list of complex numbers."""

    coords: List[ComplexPayload]

    @field_validator("coords")
    def validate_torus(cls, value):
        if not value:
            raise ValueError("A point needs at least one coordinate.")
        if any(c.re == 0 and c.im == 0 for c in value):
            raise ValueError("Torus points have no zero coordinate.")
        return value
