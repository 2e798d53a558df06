"""
monodromy.py - Sampling the monodromy action on a fibre.

Loop permutations generate a subgroup of the monodromy group; the report
states what the sampled subgroup already certifies: transitivity,
2-transitivity and the presence of a simple transposition.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import factorial
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy.combinatorics import Permutation, PermutationGroup

from ..base.polysys.system import Seed, SparseSystem, rng_from
from ..base.solver.torus import SolutionSet, solve_torus
from ..base.tracker.loops import monodromy_loop
from ..config.models.settings import SolverConfig, TrackerConfig
from ..core.mixedvol.mixed import mixed_volume
from ..core.supports.classify import is_abundant, monodromy_outlook
from ..core.supports.lattice import SupportCollection
from ..err import MonodromyError, PreconditionError

logger = logging.getLogger(__name__)

ENUMERATION_LIMIT = 50000


@dataclass(frozen=True, slots=True)
class GroupSummary:
    """Properties of the group generated by sampled permutations of ``degree`` points."""

    degree: int
    order: int
    transitive: bool
    two_transitive: bool
    symmetric: bool
    transposition_observed: bool
    transposition_generated: bool

    def serialize(self) -> Dict[str, Any]:
        return {
            "degree": self.degree,
            "order": str(self.order),
            "transitive": self.transitive,
            "two_transitive": self.two_transitive,
            "symmetric": self.symmetric,
            "transposition_observed": self.transposition_observed,
            "transposition_generated": self.transposition_generated,
        }


def _is_transposition(perm: Sequence[int]) -> bool:
    return sum(1 for i, j in enumerate(perm) if i != j) == 2


def summarize_group(perms: Sequence[Sequence[int]], degree: int) -> GroupSummary:
    """
    Orbit data of the group generated by ``perms`` on ``range(degree)``.

    Transitivity is read off the orbit of 0, 2-transitivity off the orbit of
    1 under the stabilizer of 0.
    """
    if degree <= 1:
        return GroupSummary(degree, 1, True, True, True, False, False)
    gens = [Permutation(list(p)) for p in perms] or [Permutation(degree - 1)]
    group = PermutationGroup(gens)
    order = int(group.order())
    transitive = len(group.orbit(0)) == degree
    two_transitive = transitive and (degree == 2 or len(group.stabilizer(0).orbit(1)) == degree - 1)
    symmetric = order == factorial(degree)
    observed = any(_is_transposition(p) for p in perms)
    generated = observed or (symmetric and degree >= 2)
    if not generated and order <= ENUMERATION_LIMIT:
        generated = any(_is_transposition(g.array_form) for g in group.generate())
    return GroupSummary(degree, order, transitive, two_transitive, symmetric, observed, generated)


@dataclass(frozen=True, slots=True)
class MonodromyReport:
    """Sampled loop permutations and the group they generate."""

    permutations: Tuple[Tuple[int, ...], ...]
    failed_loops: int
    group: GroupSummary
    outlook: str
    diagnostics: Dict[str, Any] = field(default_factory=dict)

    def serialize(self) -> Dict[str, Any]:
        return {
            "permutations": [list(p) for p in self.permutations],
            "failed_loops": self.failed_loops,
            "group": self.group.serialize(),
            "outlook": self.outlook,
            "diagnostics": self.diagnostics,
        }


def monodromy_experiment(
    collection: SupportCollection,
    system: SparseSystem,
    part: SupportCollection,
    num_loops: int = 100,
    seed: Seed = 0,
    config: Optional[TrackerConfig] = None,
    solved: Optional[SolutionSet] = None,
) -> MonodromyReport:
    """
    Sample ``num_loops`` loops moving only the coefficients on ``B``.

    Failed loops are skipped and counted; they shrink the sample but never
    add a permutation.

    Raises:
        PreconditionError: ``zero_mixed_volume``, ``not_abundant`` or
            ``incomplete_fibre`` when the fibre does not have ``MV`` points.
    """
    config = config or TrackerConfig()
    if system.collection != collection:
        raise PreconditionError("System is not supported on the given collection.", code="collection_mismatch")
    mv = mixed_volume(collection)
    if mv == 0:
        raise PreconditionError("Mixed volume is zero.", code="zero_mixed_volume")
    if not is_abundant(part):
        raise PreconditionError("B is not abundant.", code="not_abundant")

    seeds = np.random.SeedSequence(int(rng_from(seed).integers(2**63))).spawn(num_loops + 1)
    solved = solved or solve_torus(system, np.random.default_rng(seeds[0]), SolverConfig(tracker=config))
    if solved.certified_count != mv:
        raise PreconditionError(f"Fibre has {solved.certified_count} of {mv} points.", code="incomplete_fibre")

    perms: List[Tuple[int, ...]] = []
    failed = 0
    for k in range(num_loops):
        try:
            perms.append(monodromy_loop(system, part, solved.points, seeds[k + 1], config))
        except MonodromyError as e:
            failed += 1
            logger.warning(f"Loop {k} dropped: {e.message}")
    summary = summarize_group(perms, mv)
    outlook = monodromy_outlook(collection).value
    logger.info(
        f"Monodromy sample of {len(perms)} loops on {mv} points: transitive={summary.transitive}, "
        f"2-transitive={summary.two_transitive}, symmetric={summary.symmetric}"
    )
    return MonodromyReport(tuple(perms), failed, summary, outlook, {"mv": mv, "num_loops": num_loops})
