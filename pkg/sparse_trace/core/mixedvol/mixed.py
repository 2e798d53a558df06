"""
mixed.py - Normalized mixed volumes by inclusion-exclusion.

    MV(A_1..A_n) = sum over nonempty I of (-1)^(n-|I|) vol(sum_{i in I} conv(A_i))

With this normalization MV(simplex, ..., simplex) = 1 and MV equals the
number of torus solutions of a generic system.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from itertools import combinations
from typing import List, Sequence, Tuple

from ...err import CapacityError, PreconditionError
from ..intmath import integral_coordinates
from ..supports.lattice import SupportCollection, Support, check_subset, collection_lattice, saturation
from .polytope import Polytope, convex_hull, euclidean_volume, minkowski_sum

logger = logging.getLogger(__name__)

MAX_DIMENSION = 4


def _subset_volume(hulls: Sequence[Polytope], subset: Tuple[int, ...]) -> Fraction:
    return euclidean_volume(minkowski_sum(*(hulls[i] for i in subset)))


def mixed_volume(collection: SupportCollection, jobs: int = 1) -> int:
    """
    Normalized mixed volume of a square collection.

    Args:
        collection (SupportCollection): Square collection, ``n <= 4``.
        jobs (int): Worker threads for the subset volumes. Terms are summed in
            a fixed order whatever the value.

    Returns:
        int: ``MV(C) >= 0``.

    Raises:
        PreconditionError: if the collection is not square or has an empty member.
        CapacityError: if ``n > 4``.
    """
    collection.require_square()
    collection.require_nonempty_members()
    n = collection.ambient_dim
    if n > MAX_DIMENSION:
        raise CapacityError(f"Mixed volume is limited to n <= {MAX_DIMENSION}.", limit=MAX_DIMENSION, got=n)

    hulls = [convex_hull(s) for s in collection]
    subsets = [c for k in range(1, n + 1) for c in combinations(range(n), k)]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            volumes = list(pool.map(lambda s: _subset_volume(hulls, s), subsets))
    else:
        volumes = [_subset_volume(hulls, s) for s in subsets]

    total = Fraction(0)
    for subset, vol in zip(subsets, volumes):
        total += (-1) ** (n - len(subset)) * vol
    if total.denominator != 1 or total < 0:
        raise ArithmeticError(f"Mixed volume came out as {total}; expected a nonnegative integer.")
    logger.debug(f"MV over {n} supports = {total}")
    return int(total)


def lattice_coordinates(collection: SupportCollection, subset: Sequence[int]) -> SupportCollection:
    """
    Express ``A_I`` in a basis of the saturation of ``L[A_I]``.

    Every member is first translated so its lexicographically least point is
    the origin. The result lives in ``Z^r`` with ``r = rank(A_I)``.
    """
    idx = check_subset(subset, len(collection))
    sub, _ = collection.restrict(idx).anchored()
    info = collection_lattice(sub)
    sat, _ = saturation(info)
    if not sat:
        raise PreconditionError("Subcollection has rank 0.", code="rank_mismatch")
    coords = integral_coordinates(sat, collection.ambient_dim)
    members: List[Support] = []
    for s in sub:
        pts = [coords(p) for p in s.points]
        if any(p is None for p in pts):
            raise ArithmeticError("Saturation basis does not cover the subcollection.")
        members.append(Support(tuple(sorted(pts)), len(sat)))
    return SupportCollection(tuple(members), len(sat))


def relative_mixed_volume(collection: SupportCollection, subset: Sequence[int]) -> int:
    """
    Mixed volume of ``A_I`` inside its own lattice.

    Args:
        collection (SupportCollection): Any collection.
        subset (Sequence[int]): 0-based indices ``I`` with ``rank(A_I) = |I|``.

    Returns:
        int: ``MV`` of ``A_I`` computed in ``Z^|I|`` through a saturation basis.

    Raises:
        PreconditionError: ``rank_mismatch`` when ``rank(A_I) != |I|``.
    """
    idx = check_subset(subset, len(collection))
    rank = collection_lattice(collection.restrict(idx)).rank
    if rank != len(idx):
        raise PreconditionError(
            f"rank(A_I) = {rank} but |I| = {len(idx)}.", code="rank_mismatch", subset=list(idx)
        )
    return mixed_volume(lattice_coordinates(collection, idx))
