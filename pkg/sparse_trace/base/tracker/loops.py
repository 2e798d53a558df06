"""
loops.py - Monodromy permutations from closed loops in coefficient space.

A loop starts and ends at a base system F and only moves the coefficients
indexed by B. Tracking the full fibre of F around it and matching the end
points back to the fibre gives a permutation of the solutions.
"""

from __future__ import annotations

import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ...config.models.settings import TrackerConfig
from ...core.supports.lattice import SupportCollection
from ...err import MonodromyError, PreconditionError
from ..polysys.homotopy import SegmentFamily
from ..polysys.system import Seed, SparseSystem, TorusPoint, agree_outside, as_array, resample, rng_from
from .paths import track_set

logger = logging.getLogger(__name__)

Permutation = Tuple[int, ...]

MATCH_RATIO = 0.1
MATCH_RADIUS = 1e-6


def match_points(ends: Sequence[np.ndarray], fibre: Sequence[np.ndarray]) -> Permutation:
    """
    Index of the fibre point each end point lands on.

    The nearest fibre point must be at least ten times closer than the next
    nearest one, and the assignment must be a bijection.

    Raises:
        MonodromyError: on an ambiguous or non-bijective matching.
    """
    targets = np.array([as_array(p) for p in fibre])
    image: List[int] = []
    for k, end in enumerate(ends):
        end = as_array(end)
        dist = np.max(np.abs(targets - end[None, :]), axis=1)
        order = np.argsort(dist, kind="stable")
        nearest = float(dist[order[0]])
        scale = max(1.0, float(np.max(np.abs(end))))
        if len(order) > 1:
            if nearest >= MATCH_RATIO * float(dist[order[1]]):
                raise MonodromyError(f"End point {k} matches two fibre points.", path=k)
        elif nearest > MATCH_RADIUS * scale:
            raise MonodromyError(f"End point {k} is not on the fibre.", path=k)
        image.append(int(order[0]))
    if len(set(image)) != len(image):
        raise MonodromyError("Loop end points do not form a permutation of the fibre.")
    return tuple(image)


def compose(first: Permutation, second: Permutation) -> Permutation:
    """Permutation of ``first`` followed by ``second``."""
    return tuple(second[i] for i in first)


def transport(
    points: Sequence[np.ndarray], waypoints: Sequence[SparseSystem], config: TrackerConfig
) -> List[np.ndarray]:
    """Carry points along the polygon through ``waypoints``, one segment at a time."""
    current = [as_array(p) for p in points]
    for k, (src, dst) in enumerate(zip(waypoints, waypoints[1:])):
        if src == dst:
            continue
        outcomes = track_set(SegmentFamily(dst, src), [TorusPoint.from_array(p) for p in current], 0.0, 1.0, config)
        bad = [i for i, o in enumerate(outcomes) if not o.ok]
        if bad:
            raise MonodromyError(
                f"{len(bad)} path(s) failed on loop edge {k}.",
                edge=k,
                statuses=[outcomes[i].status.value for i in bad],
            )
        current = [o.end.array for o in outcomes]
    return current


def monodromy_loop(
    base: SparseSystem,
    part: SupportCollection,
    fibre: Sequence[TorusPoint],
    seed: Seed,
    config: Optional[TrackerConfig] = None,
    waypoints: Optional[Tuple[SparseSystem, SparseSystem]] = None,
) -> Permutation:
    """
    Permutation of ``fibre`` induced by a triangle loop ``F -> G1 -> G2 -> F``.

    ``G1`` and ``G2`` are drawn from ``seed`` by resampling the coefficients on
    ``B``; explicit ``waypoints`` replace them and must agree with ``F``
    outside ``B``.

    Args:
        base (SparseSystem): ``F``.
        part (SupportCollection): ``B``, member-wise inside the collection.
        fibre (Sequence[TorusPoint]): All solutions of ``F``.
        seed (Seed): Seed for the waypoints.
        config (Optional[TrackerConfig]): Tracker settings.
        waypoints (Optional[Tuple[SparseSystem, SparseSystem]]): ``(G1, G2)``.

    Returns:
        Permutation: ``perm[i] = j`` when solution ``i`` ends on solution ``j``.

    Raises:
        MonodromyError: when a path fails or the matching is ambiguous.
    """
    config = config or TrackerConfig()
    if not part.issubset(base.collection):
        raise PreconditionError("B is not contained in the collection.", code="not_subset")
    if waypoints is None:
        rng = rng_from(seed)
        waypoints = (resample(base, part, rng), resample(base, part, rng))
    elif not all(agree_outside(w, base, part) for w in waypoints):
        raise PreconditionError("Waypoints must agree with the base system outside B.", code="not_in_family")
    if len(fibre) <= 1:
        return tuple(range(len(fibre)))

    ends = transport(fibre, (base, *waypoints, base), config)
    perm = match_points(ends, [p.array for p in fibre])
    logger.debug(f"Loop permutation {perm}")
    return perm
