"""
torus.py - Complete torus solution sets of small square systems.

A total degree homotopy: each f_i is multiplied by a monomial so its
exponents are nonnegative, the start system is x_i^{d_i} - 1 with d_i the
degree of f_i, and every start point is tracked along the gamma-deformed
segment. Paths ending outside the torus are dropped. When fewer than MV(A)
points survive, the solve is repeated with a fresh gamma and the results are
merged.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import product
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ...config.models.settings import SolverConfig
from ...core.mixedvol.mixed import mixed_volume
from ...core.supports.lattice import Support, SupportCollection
from ...err import SerializationError
from ..polysys.homotopy import SegmentFamily
from ..polysys.system import Seed, SparseSystem, TorusPoint, condition_number, newton_polish, newton_residual, rng_from
from ..tracker.paths import PathOutcome, PathStatus, track_set

logger = logging.getLogger(__name__)

TORUS_FILTER = 1e-8


@dataclass(frozen=True, slots=True)
class SolutionSet:
    """
    Torus solutions of one system.

    Attributes:
        points (Tuple[TorusPoint, ...]): Pairwise distinct solutions.
        residuals (Tuple[float, ...]): Relative Newton correction per point.
        mv (int): The BKK bound ``MV(A)``.
        conditions (Tuple[float, ...]): Jacobian condition number per point.
        multiplicity (bool): A path reached a singular torus point at ``t = 1``.
        failed_paths (int): Paths that did not reach a regular end point.
        tracked_paths (int): Paths tracked over all attempts.
    """

    points: Tuple[TorusPoint, ...]
    residuals: Tuple[float, ...]
    mv: int
    conditions: Tuple[float, ...] = ()
    multiplicity: bool = False
    failed_paths: int = 0
    tracked_paths: int = 0

    @property
    def certified_count(self) -> int:
        return len(self.points)

    @property
    def possibly_incomplete(self) -> bool:
        return self.certified_count < self.mv

    def __len__(self) -> int:
        return len(self.points)

    def arrays(self) -> List[np.ndarray]:
        return [p.array for p in self.points]

    def serialize(self) -> Dict[str, Any]:
        return {
            "points": [p.serialize() for p in self.points],
            "mv": self.mv,
            "residuals": list(self.residuals),
            "certified_count": self.certified_count,
            "possibly_incomplete": self.possibly_incomplete,
            "multiplicity": self.multiplicity,
            "failed_paths": self.failed_paths,
        }

    @classmethod
    def deserialize(cls, payload: Dict[str, Any]) -> "SolutionSet":
        """Read a solution file; ``mv`` defaults to the number of points."""
        if not isinstance(payload, dict) or not isinstance(payload.get("points"), list):
            raise SerializationError("A solution file needs a 'points' list.")
        points = tuple(TorusPoint.deserialize(p) for p in payload["points"])
        try:
            residuals = tuple(float(r) for r in payload.get("residuals", [0.0] * len(points)))
            mv = int(payload.get("mv", len(points)))
        except (TypeError, ValueError) as e:
            raise SerializationError(f"Malformed solution file: {e}") from e
        if len(residuals) != len(points):
            raise SerializationError("Need one residual per point.")
        return cls(points, residuals, mv, multiplicity=bool(payload.get("multiplicity", False)))


def total_degrees(system: SparseSystem) -> Tuple[int, ...]:
    """Degree of each polynomial over its nonzero coefficients; ``-1`` for a zero polynomial."""
    degrees = []
    for i, support in enumerate(system.collection):
        row = system.row(i)
        used = [sum(p) for p, c in zip(support.points, row) if c != 0]
        degrees.append(max(used) if used else -1)
    return tuple(degrees)


def start_system(collection: SupportCollection, degrees: Sequence[int]) -> Tuple[SparseSystem, List[TorusPoint]]:
    """``x_i^{d_i} - 1`` on ``collection`` (which must contain ``0`` and ``d_i e_i``) and its roots."""
    n = collection.ambient_dim
    origin = tuple(0 for _ in range(n))
    terms = []
    for i, d in enumerate(degrees):
        top = tuple(d if j == i else 0 for j in range(n))
        terms.append({top: 1.0, origin: -1.0})
    roots = [np.exp(2j * np.pi * np.arange(d) / d) for d in degrees]
    starts = [TorusPoint(tuple(combo)) for combo in product(*roots)]
    return SparseSystem.from_terms(collection, terms), starts


def _dedupe(points: List[np.ndarray], radius: float) -> Tuple[List[np.ndarray], bool]:
    kept: List[np.ndarray] = []
    merged = False
    for p in points:
        if any(np.max(np.abs(p - q)) <= radius * max(1.0, float(np.max(np.abs(q)))) for q in kept):
            merged = True
            continue
        kept.append(p)
    return kept, merged


def _canonical_order(points: List[np.ndarray]) -> List[np.ndarray]:
    return sorted(points, key=lambda p: tuple(v for c in p for v in (round(c.real, 8), round(c.imag, 8))))


def _singular_end(outcome: PathOutcome, newton_tol: float) -> bool:
    """A path that stopped at ``t = 1`` on a near-solution with a singular Jacobian."""
    return (
        outcome.status is PathStatus.SINGULAR
        and outcome.t_reached == 1.0
        and outcome.condition >= 1.0 / newton_tol
        and outcome.residual <= np.sqrt(newton_tol)
    )


def solve_torus(system: SparseSystem, seed: Seed = 0, config: Optional[SolverConfig] = None) -> SolutionSet:
    """
    All torus solutions of a square system.

    Args:
        system (SparseSystem): Square system ``F``.
        seed (Seed): Seed for the gamma constants.
        config (Optional[SolverConfig]): Attempts, deduplication radius and
            tracker settings.

    Returns:
        SolutionSet: ``possibly_incomplete`` is set when fewer than ``MV``
        points were found; ``multiplicity`` when a path ended on a singular
        solution. Excess total degree paths that land on a regular root
        already reached by another path are merged, not flagged.

    Raises:
        PreconditionError: if the collection is not square.
    """
    config = config or SolverConfig()
    tracker = config.tracker
    system.collection.require_square()
    mv = mixed_volume(system.collection)
    n = system.ambient_dim

    normalized, shifts = system.collection.normalized()
    shifted = system.shift(shifts)
    degrees = total_degrees(shifted)
    if min(degrees) <= 0:
        logger.warning(f"System has a constant or zero polynomial (degrees {degrees}); no isolated torus solutions")
        return SolutionSet((), (), mv)

    origin = tuple(0 for _ in range(n))
    extra = SupportCollection(
        tuple(Support((origin, tuple(d if j == i else 0 for j in range(n))), n) for i, d in enumerate(degrees)), n
    )
    embedding = normalized.union(extra)
    target = shifted.embed(embedding)
    start, starts = start_system(embedding, degrees)

    rng = rng_from(seed)
    found: List[np.ndarray] = []
    multiplicity = False
    failed = tracked = 0
    for attempt in range(config.attempts):
        gamma = np.exp(2j * np.pi * rng.uniform())
        outcomes = track_set(SegmentFamily(target, start, gamma), starts, 0.0, 1.0, tracker)
        tracked += len(outcomes)
        ends = []
        for o in outcomes:
            if _singular_end(o, tracker.newton_tol):
                multiplicity = True
            if o.end is None:
                if o.status is not PathStatus.DIVERGED:
                    failed += 1
                continue
            x = o.end.array
            if float(np.min(np.abs(x))) <= TORUS_FILTER * max(1.0, float(np.max(np.abs(x)))):
                continue
            ends.append(x)
        found, merged = _dedupe(found + ends, config.dedup_radius)
        if merged:
            logger.debug(f"Attempt {attempt}: merged end points that reached the same regular root")
        logger.debug(f"Attempt {attempt}: {len(found)} of {mv} torus solutions")
        if len(found) >= mv:
            break

    points, residuals, conditions = [], [], []
    for x in _canonical_order(found):
        residual = newton_residual(system, x)
        if residual > tracker.newton_tol:
            x, residual = newton_polish(system, x, tracker.newton_tol, tracker.max_newton_iters)
        if residual > tracker.newton_tol:
            failed += 1
            continue
        points.append(TorusPoint.from_array(x))
        residuals.append(residual)
        conditions.append(condition_number(system, x))

    result = SolutionSet(tuple(points), tuple(residuals), mv, tuple(conditions), multiplicity, failed, tracked)
    if result.possibly_incomplete:
        logger.warning(f"Found {result.certified_count} torus solutions, fewer than MV = {mv}")
    if result.certified_count > mv:
        logger.warning(f"Found {result.certified_count} torus solutions, more than MV = {mv}")
    logger.info(f"Solved system with MV {mv}: {result.certified_count} points over {tracked} paths")
    return result


def is_bernstein_generic(system: SparseSystem, solved: SolutionSet, newton_tol: float = 1e-12) -> bool:
    """
    ``|V(F)| = MV`` with every Jacobian condition number below ``1 / newton_tol``.
    """
    if solved.multiplicity or solved.certified_count != solved.mv:
        return False
    conditions = solved.conditions or tuple(condition_number(system, p) for p in solved.points)
    return all(c < 1.0 / newton_tol for c in conditions)


def solve_pencil(
    target: SparseSystem,
    start: SparseSystem,
    ts: Sequence[float],
    seed: Seed = 0,
    config: Optional[SolverConfig] = None,
) -> List[SolutionSet]:
    """Solve ``t F + (1 - t) G`` independently at each ``t``."""
    rng = rng_from(seed)
    family = SegmentFamily(target, start)
    return [solve_torus(family.at(float(t)), rng, config) for t in ts]
