from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class TrackerConfig(BaseModel):
    """
    Pydantic model to validate the configuration of the path tracker.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    newton_tol: float = 1e-12
    corrector_tol: float = 1e-9
    max_newton_iters: int = 8
    initial_step: float = 0.05
    min_step: float = 1e-9
    step_expand: float = 1.5
    step_contract: float = 0.5
    torus_floor: float = 1e-14
    path_bound: float = 1e8
    max_steps: int = 20000
    jobs: int = 1

    @field_validator("newton_tol", "corrector_tol", "torus_floor", "path_bound")
    def validate_positive(cls, value):
        if value <= 0:
            raise ValueError("Tolerances and bounds must be positive.")
        return value

    @field_validator("max_newton_iters", "max_steps", "jobs")
    def validate_count(cls, value):
        if value < 1:
            raise ValueError("Iteration caps and worker counts must be at least 1.")
        return value

    @field_validator("step_contract")
    def validate_contract(cls, value):
        if not 0 < value < 1:
            raise ValueError("The 'step_contract' factor must lie in (0, 1).")
        return value

    @field_validator("step_expand")
    def validate_expand(cls, value):
        if value <= 1:
            raise ValueError("The 'step_expand' factor must exceed 1.")
        return value

    @model_validator(mode="after")
    def validate_steps(self):
        if not 0 < self.min_step < self.initial_step <= 1:
            raise ValueError("Need 0 < min_step < initial_step <= 1.")
        return self


class SolverConfig(BaseModel):
    """
    Pydantic model to validate the configuration of the torus solver.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    attempts: int = 3
    dedup_radius: float = 1e-8
    tracker: TrackerConfig = Field(default_factory=TrackerConfig)

    @field_validator("attempts")
    def validate_attempts(cls, value):
        if value < 1:
            raise ValueError("The solver needs at least one attempt.")
        return value

    @field_validator("dedup_radius")
    def validate_radius(cls, value):
        if value <= 0:
            raise ValueError("The 'dedup_radius' must be positive.")
        return value


class TraceTestConfig(BaseModel):
    """
    Pydantic model to validate the configuration of the trace tests.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    rel_tol: float = 1e-6
    solution_tol: float = 1e-8
    genericity: Literal["auto", "solve", "jacobian"] = "auto"
    assume_tal: bool = False
    one_sided: bool = False
    tracker: TrackerConfig = Field(default_factory=TrackerConfig)

    @field_validator("rel_tol", "solution_tol")
    def validate_tolerance(cls, value):
        if value <= 0:
            raise ValueError("Tolerances must be positive.")
        return value


class Settings(BaseModel):
    """
    Top level settings as read from a YAML file.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    tracker: TrackerConfig = Field(default_factory=TrackerConfig)
    solver: SolverConfig = Field(default_factory=SolverConfig)
    trace_test: TraceTestConfig = Field(default_factory=TraceTestConfig)
