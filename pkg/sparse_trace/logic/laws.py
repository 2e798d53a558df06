"""
laws.py - Numerical checks of how the first coordinate trace behaves.

classify_linearity samples Sigma_1 along a line in coefficient space and
classifies it as constant, affine linear or nonlinear. The lacunary and
triangular checks confirm the factor relations between the trace of a system
and the trace of its reduction.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..base.polysys.system import Seed, SparseSystem, apply_monomial_map, random_system, rng_from, split
from ..base.solver.torus import SolutionSet, is_bernstein_generic, solve_torus
from ..config.models.settings import SolverConfig, TraceTestConfig
from ..core.mixedvol.mixed import mixed_volume, relative_mixed_volume
from ..core.supports.classify import is_triangular, lacunary_reduction, triangular_reduction
from ..core.supports.lattice import SupportCollection, check_subset, collection_lattice
from ..err import PreconditionError
from .traces import relative_gap, trace

logger = logging.getLogger(__name__)

MAX_GRID_RETRIES = 5
CONSTANT_TOL = 1e-6
AFFINE_TOL = 1e-5
FIBRE_TOL = 1e-6


def _complex(value: complex) -> Dict[str, float]:
    return {"re": value.real, "im": value.imag}


class TraceBehaviour(str, Enum):
    CONSTANT = "constant"
    AFFINE_LINEAR = "affine_linear"
    NONLINEAR = "nonlinear"


@dataclass(frozen=True, slots=True)
class LinearityReport:
    """Traces sampled on an evenly spaced grid and their classification."""

    classification: TraceBehaviour
    ts: Tuple[float, ...]
    traces: Tuple[complex, ...]
    max_first_difference: float
    max_second_difference: float
    scale: float
    retries: int

    def serialize(self) -> Dict[str, Any]:
        return {
            "classification": self.classification.value,
            "ts": list(self.ts),
            "traces": [_complex(v) for v in self.traces],
            "max_first_difference": self.max_first_difference,
            "max_second_difference": self.max_second_difference,
            "scale": self.scale,
            "retries": self.retries,
        }


@dataclass(frozen=True, slots=True)
class LawReport:
    """
    Comparison ``lhs`` against ``rhs`` for one trace relation.

    Attributes:
        law (str): ``"lacunary_vanishing"``, ``"lacunary_index"`` or
            ``"triangular_factor"``.
        holds (bool): ``residual <= tolerance``.
        lhs (complex): ``Sigma_1(V(F))``.
        rhs (complex): The predicted value.
        factor (int): Multiplier of the reduced trace (0 for vanishing).
        residual (float): Relative gap between the two sides.
        tolerance (float): Threshold.
        subset_check (Dict[str, Any]): The same relation for a union of
            fibres over part of the reduced solutions.
    """

    law: str
    holds: bool
    lhs: complex
    rhs: complex
    factor: int
    residual: float
    tolerance: float
    subset_check: Dict[str, Any] = field(default_factory=dict)
    diagnostics: Dict[str, Any] = field(default_factory=dict)

    def serialize(self) -> Dict[str, Any]:
        return {
            "law": self.law,
            "holds": self.holds,
            "lhs": _complex(self.lhs),
            "rhs": _complex(self.rhs),
            "factor": self.factor,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "subset_check": self.subset_check,
            "diagnostics": self.diagnostics,
        }


def classify_traces(values: Sequence[complex]) -> Tuple[TraceBehaviour, float, float, float]:
    """Classify samples on an evenly spaced grid by their first and second differences."""
    values = np.asarray(values, dtype=complex)
    scale = max(1.0, float(np.max(np.abs(values))))
    first = float(np.max(np.abs(np.diff(values))))
    second = float(np.max(np.abs(np.diff(values, n=2))))
    if first <= CONSTANT_TOL * scale:
        behaviour = TraceBehaviour.CONSTANT
    elif second <= AFFINE_TOL * scale:
        behaviour = TraceBehaviour.AFFINE_LINEAR
    else:
        behaviour = TraceBehaviour.NONLINEAR
    return behaviour, first, second, scale


def classify_linearity(
    collection: SupportCollection,
    system: SparseSystem,
    perturb_set: SupportCollection,
    num_t: int = 7,
    seed: Seed = 0,
    config: Optional[SolverConfig] = None,
) -> LinearityReport:
    """
    How ``Sigma_1(V(F + t dG))`` depends on ``t`` when ``dG`` lives on ``perturb_set``.

    Each sample is a full solve. When a sample is not Bernstein-generic the
    whole grid is shifted by a random offset and sampled again.

    Raises:
        PreconditionError: ``too_few_samples`` for ``num_t < 5``,
            ``not_subset`` and ``not_generic`` when every retry hits a
            degenerate sample.
    """
    config = config or SolverConfig()
    if num_t < 5:
        raise PreconditionError("Linearity classification needs at least 5 samples.", code="too_few_samples")
    if system.collection != collection:
        raise PreconditionError("System is not supported on the given collection.", code="collection_mismatch")
    if not perturb_set.issubset(collection):
        raise PreconditionError("Perturbation set is not contained in the collection.", code="not_subset")

    rng = rng_from(seed)
    delta = split(random_system(collection, rng), perturb_set)[0]
    spacing = 1.0 / (num_t - 1)
    for attempt in range(MAX_GRID_RETRIES + 1):
        offset = 0.0 if attempt == 0 else float(rng.uniform(0.1, 0.9)) * spacing
        ts = tuple(offset + k * spacing for k in range(num_t))
        values: List[complex] = []
        for t in ts:
            sample = SparseSystem.from_flat(collection, system.flat + t * delta.flat)
            solved = solve_torus(sample, rng, config)
            if not is_bernstein_generic(sample, solved, config.tracker.newton_tol):
                logger.warning(f"Sample t = {t:.4f} is degenerate; resampling the grid")
                break
            values.append(trace(solved.points))
        else:
            behaviour, first, second, scale = classify_traces(values)
            logger.info(f"Trace classification over {num_t} samples: {behaviour.value}")
            return LinearityReport(behaviour, ts, tuple(values), first, second, scale, attempt)
    raise PreconditionError("Every sample grid hit a degenerate system.", code="not_generic")


def _solve_generic(system: SparseSystem, seed: Seed, config: SolverConfig, what: str) -> SolutionSet:
    solved = solve_torus(system, seed, config)
    if not is_bernstein_generic(system, solved, config.tracker.newton_tol):
        raise PreconditionError(
            f"The {what} is not Bernstein-generic ({solved.certified_count} of {solved.mv} points).", code="not_generic"
        )
    return solved


def _group(images: np.ndarray) -> List[List[int]]:
    """Indices of points with the same image, in order of first appearance."""
    groups: List[List[int]] = []
    for k, y in enumerate(images):
        for g in groups:
            ref = images[g[0]]
            if np.max(np.abs(y - ref)) <= FIBRE_TOL * max(1.0, float(np.max(np.abs(ref)))):
                g.append(k)
                break
        else:
            groups.append([k])
    return groups


def lacunary_trace_check(
    collection: SupportCollection,
    system: SparseSystem,
    seed: Seed = 0,
    config: Optional[TraceTestConfig] = None,
    solved: Optional[SolutionSet] = None,
) -> LawReport:
    """
    Trace relations for a lacunary collection.

    If ``e_1`` is not in ``L[A]`` the trace vanishes. Otherwise the reduction
    ``G`` on ``Phi^-1(A)`` fixes the first coordinate and
    ``Sigma_1(V(F)) = [Z^n : L[A]] * Sigma_1(V(G))``. The subset check takes
    one point per fibre of ``phi`` (or one whole fibre when the trace
    vanishes).

    Raises:
        PreconditionError: ``not_lacunary`` for index 1, ``rank_deficient``,
            ``not_generic``.
    """
    config = config or TraceTestConfig()
    solver = SolverConfig(tracker=config.tracker)
    if system.collection != collection:
        raise PreconditionError("System is not supported on the given collection.", code="collection_mismatch")
    collection.require_square()
    info = collection_lattice(collection)
    if info.index == 1:
        raise PreconditionError("Collection is not lacunary.", code="not_lacunary")
    reduction = lacunary_reduction(collection)
    index = int(info.index)

    rng = rng_from(seed)
    solved = solved or _solve_generic(system, rng, solver, "system")
    points = solved.arrays()
    lhs = trace(points)
    fibres = _group(reduction.phi.torus_map(np.array(points)))
    diagnostics = {"index": index, "fibre_sizes": sorted(len(f) for f in fibres), "phi": reduction.phi.serialize()}

    if not info.contains_unit(0):
        scale = max(1.0, math.fsum(abs(p[0]) for p in points))
        residual = abs(lhs) / scale
        fibre = [points[k] for k in fibres[0]]
        fibre_residual = abs(trace(fibre)) / max(1.0, math.fsum(abs(p[0]) for p in fibre))
        subset = {"kind": "one_fibre", "size": len(fibre), "residual": fibre_residual, "holds": fibre_residual <= config.rel_tol}
        logger.info(f"Lacunary check, e_1 outside L[A]: |Sigma_1| / scale = {residual:.3e}")
        return LawReport("lacunary_vanishing", residual <= config.rel_tol, lhs, 0j, 0, residual, config.rel_tol, subset, diagnostics)

    reduced = apply_monomial_map(system.shift(reduction.shifts), reduction.phi, inverse=True)
    reduced_solved = _solve_generic(reduced, rng, solver, "reduced system")
    base = trace(reduced_solved.points)
    rhs = index * base
    residual = relative_gap(lhs, rhs)
    sample = [points[f[0]] for f in fibres]
    sample_residual = relative_gap(trace(sample), lhs / index)
    subset = {
        "kind": "one_point_per_fibre",
        "size": len(sample),
        "residual": sample_residual,
        "holds": sample_residual <= config.rel_tol,
    }
    diagnostics["reduced_mv"] = reduced_solved.mv
    logger.info(f"Lacunary check, index {index}: relative gap {residual:.3e}")
    return LawReport("lacunary_index", residual <= config.rel_tol, lhs, rhs, index, residual, config.rel_tol, subset, diagnostics)


def triangular_trace_check(
    collection: SupportCollection,
    system: SparseSystem,
    subset: Optional[Sequence[int]] = None,
    seed: Seed = 0,
    config: Optional[TraceTestConfig] = None,
    solved: Optional[SolutionSet] = None,
) -> LawReport:
    """
    ``Sigma_1(V(F)) = (MV(A) / MV(A_I)) * Sigma_1(V(F_I))`` for a triangular witness ``I``.

    ``F_I`` is solved in ``|I|`` variables after the unimodular change of
    coordinates that fixes ``e_1`` and separates ``A_I``. The subset check
    takes the fibres over the first half of the solutions of ``F_I``.

    Args:
        subset (Optional[Sequence[int]]): 0-based witness; the least witness
            is used when omitted. ``I = (0, ..., n-1)`` gives factor 1.

    Raises:
        PreconditionError: ``not_triangular``, ``rank_mismatch``,
            ``unit_not_in_lattice`` and ``not_generic``.
    """
    config = config or TraceTestConfig()
    solver = SolverConfig(tracker=config.tracker)
    if system.collection != collection:
        raise PreconditionError("System is not supported on the given collection.", code="collection_mismatch")
    collection.require_square()
    if subset is None:
        subset = is_triangular(collection)
        if subset is None:
            raise PreconditionError("Collection is not triangular.", code="not_triangular")
    idx = check_subset(subset, len(collection))
    relative = relative_mixed_volume(collection, idx)
    total = mixed_volume(collection)
    if relative == 0 or total % relative:
        raise ArithmeticError(f"MV(A_I) = {relative} does not divide MV(A) = {total}.")
    factor = total // relative
    reduction = triangular_reduction(collection, idx)

    rng = rng_from(seed)
    solved = solved or _solve_generic(system, rng, solver, "system")
    reduced = apply_monomial_map(system.shift(reduction.shifts), reduction.phi, inverse=True)
    r = len(idx)
    sub = reduced.restrict(idx).project(r)
    sub_solved = _solve_generic(sub, rng, solver, "subsystem")

    points = solved.arrays()
    lhs = trace(points)
    base = trace(sub_solved.points)
    rhs = factor * base
    residual = relative_gap(lhs, rhs)

    images = reduction.phi.torus_map(np.array(points))[:, :r]
    roots = np.array(sub_solved.arrays())
    owner = [int(np.argmin(np.max(np.abs(roots - y[None, :]), axis=1))) for y in images]
    chosen = list(range(max(1, len(roots) // 2)))
    union = [p for p, o in zip(points, owner) if o in chosen]
    union_residual = relative_gap(trace(union), factor * trace([roots[k] for k in chosen]))
    subset_check = {
        "kind": "fibres_over_subsystem_subset",
        "size": len(union),
        "residual": union_residual,
        "holds": union_residual <= config.rel_tol,
    }
    diagnostics = {"witness": list(idx), "relative_mv": relative, "mv": total, "phi": reduction.phi.serialize()}
    logger.info(f"Triangular check on I = {idx}: factor {factor}, relative gap {residual:.3e}")
    return LawReport("triangular_factor", residual <= config.rel_tol, lhs, rhs, factor, residual, config.rel_tol, subset_check, diagnostics)
