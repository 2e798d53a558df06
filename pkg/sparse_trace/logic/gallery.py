"""
gallery.py - Worked examples checked end to end.

Each example builds its supports from the family registry, draws a random
system with the given seed and compares traces computed two ways. Examples
with ``asserted = False`` only report their numbers.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np

from ..base.polysys.system import Seed, SparseSystem, apply_monomial_map, random_coefficients, random_system, rng_from
from ..base.solver.torus import SolutionSet, solve_torus
from ..config.common.standard import CommonSupportStandard
from ..config.models.settings import SolverConfig, TraceTestConfig
from ..core.mixedvol.mixed import mixed_volume
from ..core.supports.lattice import SupportCollection
from ..core.supports.monomial import MonomialMap
from ..core.supports.offsets import unnecessary_candidate
from ..err import PreconditionError
from .laws import lacunary_trace_check, triangular_trace_check
from .traces import monomial_trace, relative_gap, trace

logger = logging.getLogger(__name__)

SHEAR = MonomialMap.from_rows([[1, 0], [-2, 1]])


@dataclass(frozen=True, slots=True)
class GalleryEntry:
    """
    Result of one worked example.

    Attributes:
        name (str): Example identifier.
        description (str): What is compared.
        holds (bool): All asserted relations held.
        asserted (bool): ``False`` for examples that only report numbers.
        values (Dict[str, Any]): Mixed volumes, counts, traces and gaps.
    """

    name: str
    description: str
    holds: bool
    asserted: bool = True
    values: Dict[str, Any] = field(default_factory=dict)

    def serialize(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "description": self.description,
            "holds": self.holds,
            "asserted": self.asserted,
            "values": self.values,
        }


def _c(value: complex) -> Dict[str, float]:
    return {"re": value.real, "im": value.imag}


def _solve(system: SparseSystem, rng: np.random.Generator, config: TraceTestConfig) -> SolutionSet:
    return solve_torus(system, rng, SolverConfig(tracker=config.tracker))


def _necessary_part(system: SparseSystem) -> SparseSystem:
    """``F`` with its unnecessary coefficients dropped, on the smaller collection."""
    collection = system.collection
    kept = collection.difference(unnecessary_candidate(collection))
    terms = [{p: c for p, c in system.terms(i).items() if p in kept[i]} for i in range(len(collection))]
    return SparseSystem.from_terms(kept, terms)


def dense_truncation(standard: CommonSupportStandard, rng: np.random.Generator, config: TraceTestConfig) -> GalleryEntry:
    """Two quintics: dropping the monomials of degree three or less keeps the trace."""
    dense = standard.build("dense_quintics")
    tops = standard.build("quintic_tops")
    system = random_system(dense, rng)
    truncated = _necessary_part(system)
    same_support = truncated.collection == tops

    solved = _solve(system, rng, config)
    reduced = _solve(truncated, rng, config)
    gap = relative_gap(trace(solved.points), trace(reduced.points))
    values = {
        "mv": solved.mv,
        "truncated_mv": mixed_volume(tops),
        "found": len(solved),
        "truncated_found": len(reduced),
        "sigma1": _c(trace(solved.points)),
        "truncated_sigma1": _c(trace(reduced.points)),
        "gap": gap,
    }
    holds = same_support and values["mv"] == 25 and values["truncated_mv"] == 9 and gap <= config.rel_tol
    return GalleryEntry("dense_truncation", "MV 25 against 9, equal first traces", holds, True, values)


def _shared_factor_system(collection: SupportCollection, rng: np.random.Generator) -> SparseSystem:
    """Dense quintics whose top forms share the factor ``x - y``; one solution lies at infinity."""
    terms = []
    for i in range(len(collection)):
        points = collection[i].points
        coeffs = dict(zip(points, random_coefficients(len(points), rng)))
        quartic = random_coefficients(5, rng)
        for a in range(6):
            upper = quartic[a - 1] if a >= 1 else 0.0
            lower = quartic[a] if a <= 4 else 0.0
            coeffs[(a, 5 - a)] = upper - lower
        terms.append(coeffs)
    return SparseSystem.from_terms(collection, terms)


def deficient_quintics(standard: CommonSupportStandard, rng: np.random.Generator, config: TraceTestConfig) -> GalleryEntry:
    """
    Quintics with a common point at infinity: 24 torus solutions.

    Zeroing the terms of degree two or less leaves 15 solutions with the same
    first trace. Reported only.
    """
    dense = standard.build("dense_quintics")
    system = _shared_factor_system(dense, rng)
    terms = [{p: c for p, c in system.terms(i).items() if sum(p) >= 3} for i in range(len(dense))]
    upper = SupportCollection.from_lists([sorted(t) for t in terms], 2)
    truncated = SparseSystem.from_terms(upper, terms)

    solved = _solve(system, rng, config)
    reduced = _solve(truncated, rng, config)
    gap = relative_gap(trace(solved.points), trace(reduced.points))
    values = {
        "mv": solved.mv,
        "found": len(solved),
        "truncated_found": len(reduced),
        "sigma1": _c(trace(solved.points)),
        "truncated_sigma1": _c(trace(reduced.points)),
        "gap": gap,
    }
    logger.info(f"Deficient quintics: {len(solved)} and {len(reduced)} torus solutions, gap {gap:.3e}")
    return GalleryEntry("deficient_quintics", "24 against 15 solutions, first traces compared", gap <= config.rel_tol, False, values)


def rectangle_columns(standard: CommonSupportStandard, rng: np.random.Generator, config: TraceTestConfig) -> GalleryEntry:
    """
    Rectangles of shapes 3x2 and 2x3: keeping the last two columns keeps the
    first trace but not the second.
    """
    collection = standard.build("tall_rectangles")
    system = random_system(collection, rng)
    restricted = _necessary_part(system)

    solved = _solve(system, rng, config)
    reduced = _solve(restricted, rng, config)
    gap1 = relative_gap(trace(solved.points, 0), trace(reduced.points, 0))
    gap2 = relative_gap(trace(solved.points, 1), trace(reduced.points, 1))
    values = {
        "mv": solved.mv,
        "restricted_mv": reduced.mv,
        "found": len(solved),
        "restricted_found": len(reduced),
        "sigma1_gap": gap1,
        "sigma2_gap": gap2,
    }
    holds = solved.mv == 3 * 3 + 2 * 2 and reduced.mv == 2 + 3 and gap1 <= config.rel_tol and gap2 > config.rel_tol
    return GalleryEntry("rectangle_columns", "MV 13 against 5, first trace kept, second trace changed", holds, True, values)


def sheared_trace(standard: CommonSupportStandard, rng: np.random.Generator, config: TraceTestConfig) -> GalleryEntry:
    """The sum of ``x1 x2^2`` over ``V(F)`` is the first trace of the sheared system."""
    dense = standard.build("dense_quintics")
    system = random_system(dense, rng)
    sheared = apply_monomial_map(system, SHEAR)

    solved = _solve(system, rng, config)
    moved = _solve(sheared, rng, config)
    lhs = monomial_trace(solved.points, (1, 2))
    rhs = trace(moved.points)
    gap = relative_gap(lhs, rhs)
    values = {"found": len(solved), "sheared_found": len(moved), "monomial_trace": _c(lhs), "sigma1": _c(rhs), "gap": gap}
    return GalleryEntry("sheared_trace", "trace of x1*x2^2 against the sheared first trace", gap <= config.rel_tol, True, values)


def _law_entry(name: str, description: str, check: Callable[..., Any], family: str, expect_factor: Optional[int]):
    def run(standard: CommonSupportStandard, rng: np.random.Generator, config: TraceTestConfig) -> GalleryEntry:
        collection = standard.build(family)
        system = random_system(collection, rng)
        report = check(collection, system, seed=rng, config=config)
        holds = report.holds and bool(report.subset_check.get("holds", True))
        if expect_factor is not None:
            holds = holds and report.factor == expect_factor
        return GalleryEntry(name, description, holds, True, report.serialize())

    run.__name__ = name
    return run


GALLERY: Dict[str, Callable[[CommonSupportStandard, np.random.Generator, TraceTestConfig], GalleryEntry]] = {
    "dense_truncation": dense_truncation,
    "deficient_quintics": deficient_quintics,
    "rectangle_columns": rectangle_columns,
    "sheared_trace": sheared_trace,
    "lacunary_vanishing": _law_entry(
        "lacunary_vanishing", "e1 outside the lattice: the first trace vanishes", lacunary_trace_check, "lacunary_even", 0
    ),
    "lacunary_index": _law_entry(
        "lacunary_index", "first trace is the index times the reduced trace", lacunary_trace_check, "lacunary_stretched", 2
    ),
    "triangular_plane": _law_entry(
        "triangular_plane", "first trace is twice the trace of the first equation", triangular_trace_check, "triangular_plane", 2
    ),
    "triangular_space": _law_entry(
        "triangular_space", "first trace is three times the trace of the planar subsystem", triangular_trace_check, "triangular_space", 3
    ),
}


def run_gallery(
    names: Optional[Sequence[str]] = None,
    seed: Seed = 0,
    config: Optional[TraceTestConfig] = None,
    standard: Optional[CommonSupportStandard] = None,
) -> List[GalleryEntry]:
    """
    Run the named examples, all of them by default, in a fixed order.

    Raises:
        PreconditionError: ``unknown_example`` for a name not in the gallery.
    """
    config = config or TraceTestConfig()
    standard = standard or CommonSupportStandard()
    names = list(GALLERY) if names is None else list(names)
    unknown = [n for n in names if n not in GALLERY]
    if unknown:
        raise PreconditionError(f"Unknown gallery examples: {unknown}", code="unknown_example", known=list(GALLERY))
    rng = rng_from(seed)
    entries = []
    for name in names:
        entry = GALLERY[name](standard, np.random.default_rng(rng.integers(2**63)), config)
        logger.info(f"Gallery {name}: {'holds' if entry.holds else 'does not hold'}")
        entries.append(entry)
    return entries
