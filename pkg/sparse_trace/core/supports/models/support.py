from typing import List

from pydantic import BaseModel, field_validator, model_validator


class SupportsPayload(BaseModel):
    """
    Pydantic model to validate the JSON form of a support collection.
    """

    n: int
    supports: List[List[List[int]]]

    @field_validator("n")
    def validate_n(cls, value):
        if value < 1:
            raise ValueError("The ambient dimension 'n' must be positive.")
        return value

    @field_validator("supports")
    def validate_supports(cls, value):
        if not value:
            raise ValueError("At least one support is required.")
        for i, support in enumerate(value):
            if not support:
                raise ValueError(f"Support {i} is empty.")
            if len({tuple(p) for p in support}) != len(support):
                raise ValueError(f"Support {i} repeats a point.")
        return value

    @model_validator(mode="after")
    def validate_lengths(self):
        for i, support in enumerate(self.supports):
            for point in support:
                if len(point) != self.n:
                    raise ValueError(f"Point {point} of support {i} does not have length {self.n}.")
        return self
