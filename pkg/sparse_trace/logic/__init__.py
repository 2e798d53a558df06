from __future__ import annotations

from .traces import affine_fit_deviation, centroid, collinear, monomial_trace, relative_gap, trace, trace_vector
from .tracetest import TraceReport, Verdict, constant_sparse_trace_test, sparse_trace_test, validate_inputs
from .laws import (
    LawReport,
    LinearityReport,
    TraceBehaviour,
    classify_linearity,
    classify_traces,
    lacunary_trace_check,
    triangular_trace_check,
)
from .monodromy import GroupSummary, MonodromyReport, monodromy_experiment, summarize_group
from .experiments import (
    ErrorStrategy,
    ExperimentError,
    ExperimentRunner,
    PencilTable,
    SolveRecord,
    VerdictTally,
    bkk_experiment,
    completeness_experiment,
    first_coordinate_gap,
    load_pencil,
    pencil_table,
    soundness_experiment,
)
from .gallery import GALLERY, GalleryEntry, run_gallery

__all__ = [
    "affine_fit_deviation",
    "centroid",
    "collinear",
    "monomial_trace",
    "relative_gap",
    "trace",
    "trace_vector",
    "TraceReport",
    "Verdict",
    "constant_sparse_trace_test",
    "sparse_trace_test",
    "validate_inputs",
    "LawReport",
    "LinearityReport",
    "TraceBehaviour",
    "classify_linearity",
    "classify_traces",
    "lacunary_trace_check",
    "triangular_trace_check",
    "GroupSummary",
    "MonodromyReport",
    "monodromy_experiment",
    "summarize_group",
    "ErrorStrategy",
    "ExperimentError",
    "ExperimentRunner",
    "PencilTable",
    "SolveRecord",
    "VerdictTally",
    "bkk_experiment",
    "completeness_experiment",
    "first_coordinate_gap",
    "load_pencil",
    "pencil_table",
    "soundness_experiment",
    "GALLERY",
    "GalleryEntry",
    "run_gallery",
]
