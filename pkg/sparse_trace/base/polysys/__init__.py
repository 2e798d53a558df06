from .homotopy import SegmentFamily
from .system import (
    MonomialEvaluator,
    SparseSystem,
    TorusPoint,
    agree_outside,
    apply_monomial_map,
    as_array,
    condition_number,
    evaluate,
    jacobian,
    newton_polish,
    newton_residual,
    newton_step,
    random_coefficients,
    random_system,
    resample,
    rng_from,
    split,
)

__all__ = [
    "SegmentFamily",
    "MonomialEvaluator",
    "SparseSystem",
    "TorusPoint",
    "agree_outside",
    "apply_monomial_map",
    "as_array",
    "condition_number",
    "evaluate",
    "jacobian",
    "newton_polish",
    "newton_residual",
    "newton_step",
    "random_coefficients",
    "random_system",
    "resample",
    "rng_from",
    "split",
]
