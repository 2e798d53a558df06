"""
tracetest.py - The sparse trace test and the constant sparse trace test.

Both tests decide whether a set S of torus solutions of F is all of V(F). A
system G is drawn that agrees with F outside a collection B, S is tracked
along the segment from F to G, and the first coordinate traces are compared:
they must move affine linearly (sparse test, B inside the trace-affine-linear
candidate) or stay constant (constant test, B inside the unnecessary
candidate). Numerical trouble never turns into a Fail verdict; it raises
PathFailureError instead.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..base.polysys.homotopy import SegmentFamily
from ..base.polysys.system import Seed, SparseSystem, TorusPoint, condition_number, newton_residual, resample, rng_from
from ..base.solver.torus import SolutionSet, is_bernstein_generic, solve_torus
from ..base.tracker.paths import PathOutcome, min_pairwise_distance, track_set
from ..config.models.settings import SolverConfig, TraceTestConfig
from ..core.mixedvol.mixed import mixed_volume
from ..core.supports.classify import is_abundant
from ..core.supports.lattice import SupportCollection, collection_lattice
from ..core.supports.offsets import tal_candidate, unnecessary_candidate
from ..err import PathFailureError, PreconditionError
from .traces import collinear, relative_gap, trace

logger = logging.getLogger(__name__)


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"


@dataclass(frozen=True, slots=True)
class TraceReport:
    """
    Outcome of one trace test run.

    Attributes:
        algorithm (str): ``"sparse"`` or ``"constant"``.
        samples (Tuple[Tuple[float, complex], ...]): ``(t, Sigma_1)`` pairs.
        collinearity_residual (float): Relative deviation from a line (or a
            constant for the constant test).
        tolerance (float): Threshold the residual was compared against.
        verdict (Verdict): ``PASS`` iff the residual is within tolerance.
        diagnostics (Dict[str, Any]): Seed, checks performed, path statuses
            and the generated system G.
    """

    algorithm: str
    samples: Tuple[Tuple[float, complex], ...]
    collinearity_residual: float
    tolerance: float
    verdict: Verdict
    diagnostics: Dict[str, Any]

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS

    def serialize(self) -> Dict[str, Any]:
        return {
            "algorithm": self.algorithm,
            "samples": [{"t": t, "sigma1": {"re": v.real, "im": v.imag}} for t, v in self.samples],
            "collinearity_residual": self.collinearity_residual,
            "tolerance": self.tolerance,
            "verdict": self.verdict.value,
            "diagnostics": self.diagnostics,
        }


@dataclass(frozen=True, slots=True)
class _Checked:
    mv: int
    genericity: str
    two_sided: bool
    points: Tuple[TorusPoint, ...]


def _check_genericity(
    system: SparseSystem, points: Sequence[TorusPoint], mv: int, config: TraceTestConfig, solved: Optional[SolutionSet], seed: Seed
) -> str:
    mode = config.genericity
    if mode == "auto":
        mode = "solve" if solved is not None or len(points) == mv else "jacobian"
    if mode == "solve":
        if solved is None:
            solved = solve_torus(system, seed, SolverConfig(tracker=config.tracker))
        if not is_bernstein_generic(system, solved, config.tracker.newton_tol):
            raise PreconditionError(
                f"System is not Bernstein-generic: {solved.certified_count} regular torus solutions, MV = {mv}.",
                code="not_generic",
            )
        return "solve"
    limit = 1.0 / config.tracker.newton_tol
    for k, p in enumerate(points):
        if condition_number(system, p) >= limit:
            raise PreconditionError(f"Jacobian is singular at solution {k}.", code="not_generic", point=k)
    return "jacobian"


def validate_inputs(
    collection: SupportCollection,
    system: SparseSystem,
    points: Sequence[TorusPoint],
    part: SupportCollection,
    candidate: SupportCollection,
    config: TraceTestConfig,
    solved: Optional[SolutionSet] = None,
    seed: Seed = 0,
    candidate_code: str = "not_tal",
    override: bool = False,
) -> _Checked:
    """
    Check the input contract shared by both tests, one error code per rule.

    Raises:
        PreconditionError: with codes ``collection_mismatch``, ``not_square``,
            ``zero_mixed_volume``, ``lacunary``, ``not_subset``,
            ``not_abundant``, ``not_tal`` / ``not_unnecessary``,
            ``empty_solution_set``, ``duplicate_solution``,
            ``not_a_solution`` and ``not_generic``.
    """
    if system.collection != collection:
        raise PreconditionError("System is not supported on the given collection.", code="collection_mismatch")
    collection.require_square()
    mv = mixed_volume(collection)
    if mv == 0:
        raise PreconditionError("Mixed volume is zero.", code="zero_mixed_volume")
    index = collection_lattice(collection).index
    if index != 1:
        raise PreconditionError(f"L[A] has index {index} in Z^n.", code="lacunary", index=str(index))
    if not part.issubset(collection):
        raise PreconditionError("B is not contained in the collection.", code="not_subset")
    two_sided = True
    if not is_abundant(part):
        if not config.one_sided:
            raise PreconditionError("B is not abundant.", code="not_abundant")
        two_sided = False
        logger.warning("B is not abundant; only a Pass verdict is conclusive")
    if not override and not part.issubset(candidate):
        raise PreconditionError("B is not inside the candidate collection.", code=candidate_code)

    if len(points) == 0:
        raise PreconditionError("Solution set is empty.", code="empty_solution_set")
    points = tuple(p if isinstance(p, TorusPoint) else TorusPoint.from_array(p) for p in points)
    if len(points) > 1 and min_pairwise_distance([p.array for p in points]) <= 1e-8:
        raise PreconditionError("Solution set repeats a point.", code="duplicate_solution")
    for k, p in enumerate(points):
        residual = newton_residual(system, p)
        if residual > config.solution_tol:
            raise PreconditionError(
                f"Point {k} is not a solution (residual {residual:.3e}).", code="not_a_solution", point=k
            )
    if len(points) > mv:
        raise PreconditionError(f"{len(points)} points exceed MV = {mv}.", code="too_many_points")
    genericity = _check_genericity(system, points, mv, config, solved, seed)
    return _Checked(mv, genericity, two_sided, points)


def _track(family: SegmentFamily, points: Sequence[TorusPoint], from_t: float, to_t: float, config: TraceTestConfig) -> List[TorusPoint]:
    outcomes: List[PathOutcome] = track_set(family, points, from_t, to_t, config.tracker)
    bad = [o for o in outcomes if not o.ok]
    if bad:
        counts = Counter(o.status.value for o in bad)
        raise PathFailureError(
            f"{len(bad)} of {len(outcomes)} paths failed between t = {from_t} and t = {to_t}.",
            outcomes=outcomes,
            statuses=dict(counts),
        )
    return [o.end for o in outcomes]


def _diagnostics(checked: _Checked, part: SupportCollection, start: SparseSystem, seed: Seed, override: bool) -> Dict[str, Any]:
    return {
        "seed": seed if isinstance(seed, int) else None,
        "mv": checked.mv,
        "size": len(checked.points),
        "genericity_check": checked.genericity,
        "two_sided": checked.two_sided,
        "candidate_override": override,
        "b_size": sum(len(b) for b in part),
        "g": start.serialize(),
    }


def sparse_trace_test(
    collection: SupportCollection,
    system: SparseSystem,
    points: Sequence[TorusPoint],
    part: Optional[SupportCollection] = None,
    seed: Seed = 0,
    config: Optional[TraceTestConfig] = None,
    solved: Optional[SolutionSet] = None,
) -> TraceReport:
    """
    Decide whether ``points`` is all of ``V(F)`` from traces at ``t = 1, 1/2, 0``.

    Args:
        collection (SupportCollection): ``A``, square with ``L[A] = Z^n``.
        system (SparseSystem): ``F`` on ``A``, Bernstein-generic.
        points (Sequence[TorusPoint]): Nonempty ``S``, solutions of ``F``.
        part (Optional[SupportCollection]): ``B``; defaults to the TAL candidate.
        seed (Seed): Seed for the random coefficients of ``G`` on ``B``.
        config (Optional[TraceTestConfig]): Tolerances and override flags.
        solved (Optional[SolutionSet]): Full solution set of ``F`` for the
            genericity check; computed when needed and absent.

    Returns:
        TraceReport: ``PASS`` iff the three traces are collinear.

    Raises:
        PreconditionError: when an input requirement fails.
        PathFailureError: when any path fails; rerun with another seed.
    """
    config = config or TraceTestConfig()
    candidate = tal_candidate(collection)
    part = candidate if part is None else part
    checked = validate_inputs(
        collection, system, points, part, candidate, config, solved, seed, "not_tal", config.assume_tal
    )

    rng = rng_from(seed)
    start = resample(system, part, rng)
    family = SegmentFamily(system, start)
    half = _track(family, checked.points, 1.0, 0.5, config)
    zero = _track(family, half, 0.5, 0.0, config)

    p1, ph, p0 = trace(checked.points), trace(half), trace(zero)
    ok, residual = collinear(p0, ph, p1, config.rel_tol)
    verdict = Verdict.PASS if ok else Verdict.FAIL
    logger.info(f"Sparse trace test on {len(checked.points)} of {checked.mv} points: {verdict.value} (residual {residual:.3e})")
    return TraceReport(
        "sparse",
        ((0.0, p0), (0.5, ph), (1.0, p1)),
        residual,
        config.rel_tol,
        verdict,
        _diagnostics(checked, part, start, seed, config.assume_tal),
    )


def constant_sparse_trace_test(
    collection: SupportCollection,
    system: SparseSystem,
    points: Sequence[TorusPoint],
    part: Optional[SupportCollection] = None,
    seed: Seed = 0,
    config: Optional[TraceTestConfig] = None,
    solved: Optional[SolutionSet] = None,
) -> TraceReport:
    """
    Decide completeness by comparing ``Sigma_1(S)`` with ``Sigma_1(S')``.

    ``S'`` are the end points of ``S`` tracked to a system ``G`` that differs
    from ``F`` only on ``B``; ``B`` defaults to the unnecessary candidate.
    Arguments and errors are as for ``sparse_trace_test``.
    """
    config = config or TraceTestConfig()
    candidate = unnecessary_candidate(collection)
    part = candidate if part is None else part
    checked = validate_inputs(collection, system, points, part, candidate, config, solved, seed, "not_unnecessary")

    rng = rng_from(seed)
    start = resample(system, part, rng)
    moved = _track(SegmentFamily(system, start), checked.points, 1.0, 0.0, config)

    p1, p0 = trace(checked.points), trace(moved)
    residual = relative_gap(p0, p1)
    verdict = Verdict.PASS if residual <= config.rel_tol else Verdict.FAIL
    logger.info(f"Constant trace test on {len(checked.points)} of {checked.mv} points: {verdict.value} (residual {residual:.3e})")
    return TraceReport(
        "constant",
        ((0.0, p0), (1.0, p1)),
        residual,
        config.rel_tol,
        verdict,
        _diagnostics(checked, part, start, seed, False),
    )
