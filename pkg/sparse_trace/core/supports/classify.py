"""
classify.py - Combinatorial classification of support collections.

Defects, abundance, lacunary and triangular collections, their reductions to
smaller or nonlacunary collections, and essential subcollections.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Any, Dict, Iterator, Optional, Sequence, Tuple

from ...err import CapacityError, PreconditionError
from ..intmath import coordinates_solver, unimodular_completion
from .lattice import (
    IndexSubset,
    LatticePoint,
    SupportCollection,
    check_subset,
    collection_lattice,
    difference_lattice,
    saturation,
)
from .monomial import MonomialMap

logger = logging.getLogger(__name__)

MAX_TRIANGULAR_DIMENSION = 8


def _subsets(size: int, proper: bool = False) -> Iterator[IndexSubset]:
    top = size - 1 if proper else size
    for k in range(1, top + 1):
        yield from combinations(range(size), k)


def defect(collection: SupportCollection, subset: Sequence[int]) -> int:
    """``def(A_I) = rank(L[A_I]) - |I|``; ``I`` is 0-based and must be nonempty."""
    idx = check_subset(subset, len(collection))
    return collection_lattice(collection.restrict(idx)).rank - len(idx)


def has_positive_mixed_volume_by_defect(collection: SupportCollection) -> bool:
    """
    Decide ``MV(C) > 0`` combinatorially: every nonempty ``I`` has defect >= 0.

    Raises:
        PreconditionError: if the collection is not square.
    """
    collection.require_square()
    for subset in _subsets(len(collection)):
        if defect(collection, subset) < 0:
            logger.debug(f"Negative defect on {subset}")
            return False
    return True


def is_lacunary(collection: SupportCollection) -> bool:
    """True iff ``[Z^n : L[C]] > 1``; rank deficient lattices count as lacunary."""
    return collection_lattice(collection).index > 1


def is_abundant(collection: SupportCollection) -> bool:
    """Every member has a full rank difference lattice. Empty members are not abundant."""
    n = collection.ambient_dim
    return all(not s.is_empty() and difference_lattice(s).rank == n for s in collection)


def is_triangular(collection: SupportCollection) -> Optional[IndexSubset]:
    """
    Lexicographically least proper ``I`` with ``rank(A_I) = |I|``, or ``None``.

    Raises:
        PreconditionError: if the collection is not square.
        CapacityError: if ``n > 8``.
    """
    collection.require_square()
    n = collection.ambient_dim
    if n > MAX_TRIANGULAR_DIMENSION:
        raise CapacityError(
            f"Triangularity search is limited to n <= {MAX_TRIANGULAR_DIMENSION}.",
            limit=MAX_TRIANGULAR_DIMENSION,
            got=n,
        )
    witnesses = [s for s in _subsets(n, proper=True) if defect(collection, s) == 0]
    return min(witnesses) if witnesses else None


def triangular_witnesses(collection: SupportCollection) -> Tuple[IndexSubset, ...]:
    """All proper witnesses, sorted."""
    collection.require_square()
    return tuple(sorted(s for s in _subsets(collection.ambient_dim, proper=True) if defect(collection, s) == 0))


def is_strictly_triangular(collection: SupportCollection) -> Optional[IndexSubset]:
    """
    Least witness ``I`` with ``1 < MV(A_I) < MV(A)``, or ``None``.

    Only reported as a flag; the trace tests do not reject on it.
    """
    from ..mixedvol.mixed import mixed_volume, relative_mixed_volume

    total = mixed_volume(collection)
    for subset in triangular_witnesses(collection):
        if 1 < relative_mixed_volume(collection, subset) < total:
            return subset
    return None


@dataclass(frozen=True, slots=True)
class Reduction:
    """
    Result of a lattice reduction.

    Attributes:
        phi (MonomialMap): The map with ``phi(reduced) == translated input``.
        reduced (SupportCollection): The reduced collection.
        shifts (Tuple[LatticePoint, ...]): Translation applied to each input
            member before reducing.
    """

    phi: MonomialMap
    reduced: SupportCollection
    shifts: Tuple[LatticePoint, ...]

    def serialize(self) -> Dict[str, Any]:
        return {
            "phi": self.phi.serialize(),
            "reduced": self.reduced.serialize(),
            "shifts": [list(s) for s in self.shifts],
        }


def lacunary_reduction(collection: SupportCollection) -> Reduction:
    """
    Nonlacunary ``B`` and ``Phi`` with ``Phi(B) = A`` after translation.

    ``Phi`` is the echelon basis of ``L[A]``: upper triangular, so its first
    column is ``k * e_1`` with ``k`` minimal. Hence ``Phi(e_1) = e_1``
    exactly when ``e_1`` is in ``L[A]``.

    Raises:
        PreconditionError: ``not_lacunary`` for index 1, ``rank_deficient``
            when ``L[A]`` does not have full rank.
    """
    info = collection_lattice(collection)
    if info.rank < collection.ambient_dim:
        raise PreconditionError("Lattice is rank deficient; no square reduction exists.", code="rank_deficient")
    if info.index == 1:
        raise PreconditionError("Collection is not lacunary.", code="not_lacunary")
    phi = MonomialMap(info.basis)
    translated, shifts = collection.anchored()
    reduced = phi.apply_collection(translated, inverse=True)
    logger.debug(f"Lacunary reduction with det {phi.determinant}")
    return Reduction(phi, reduced, shifts)


def triangular_reduction(collection: SupportCollection, subset: Sequence[int], coord: int = 0) -> Reduction:
    """
    Unimodular change of coordinates separating the subsystem ``A_I``.

    The leading ``rank(A_I)`` columns of ``Phi`` are a basis of the saturation
    of ``L[A_I]`` whose first vector is ``e_coord`` when it lies in that
    lattice; the rest complete it to a basis of Z^n. In the reduced
    collection the members indexed by ``I`` only use the leading coordinates.

    Raises:
        PreconditionError: ``unit_not_in_lattice`` when ``e_coord`` is not in
            ``L[A_I]``.
    """
    n = collection.ambient_dim
    idx = check_subset(subset, len(collection))
    info = collection_lattice(collection.restrict(idx))
    if not info.contains_unit(coord):
        raise PreconditionError(
            f"e_{coord + 1} is not in L[A_I] for I = {idx}.", code="unit_not_in_lattice", subset=list(idx)
        )
    sat, complement = saturation(info)
    unit = tuple(1 if i == coord else 0 for i in range(n))
    c = coordinates_solver(sat, n)(unit)
    turn = unimodular_completion([int(v) for v in c])
    leading = [tuple(sum(sat[k][i] * col[k] for k in range(len(sat))) for i in range(n)) for col in turn]
    phi = MonomialMap(tuple(leading) + tuple(complement))
    translated, shifts = collection.anchored()
    return Reduction(phi, phi.apply_collection(translated, inverse=True), shifts)


def is_essential(collection: SupportCollection) -> bool:
    """Defect -1 on the whole collection and nonnegative on every proper subcollection."""
    size = len(collection)
    if defect(collection, range(size)) != -1:
        return False
    return all(defect(collection, s) >= 0 for s in _subsets(size, proper=True))


def essential_complement(collection: SupportCollection, coord: int = 0) -> Optional[IndexSubset]:
    """
    The unique ``I`` for which ``({0, e_coord}, A_I)`` is essential, or ``None``.

    For a square collection with positive mixed volume such an ``I`` exists
    and is unique; uniqueness is checked by exhaustive search.
    """
    from .lattice import Support

    n = collection.ambient_dim
    q = Support((tuple(0 for _ in range(n)), tuple(1 if i == coord else 0 for i in range(n))), n)
    found = [
        s for s in _subsets(len(collection))
        if is_essential(type(collection)((q,) + tuple(collection[i] for i in s), n))
    ]
    if len(found) > 1:
        raise ArithmeticError(f"Essential subcollection is not unique: {found}")
    return found[0] if found else None


class MonodromyOutlook(str, Enum):
    """Predicted shape of the monodromy group of generic systems on a collection."""

    SYMMETRIC = "symmetric"
    IMPRIMITIVE = "imprimitive"
    TRIVIAL = "trivial"


def monodromy_outlook(collection: SupportCollection) -> MonodromyOutlook:
    """
    Symmetric unless the collection is lacunary or strictly triangular.

    A mixed volume of at most 1 gives the trivial group; lacunary collections
    with mixed volume 2 and index 2 still have the (symmetric) group of order 2.
    """
    from ..mixedvol.mixed import mixed_volume

    mv = mixed_volume(collection)
    if mv <= 1:
        return MonodromyOutlook.TRIVIAL
    info = collection_lattice(collection)
    if info.index > 1:
        if mv == 2 and info.index == 2:
            return MonodromyOutlook.SYMMETRIC
        return MonodromyOutlook.IMPRIMITIVE
    if is_strictly_triangular(collection) is not None:
        return MonodromyOutlook.IMPRIMITIVE
    return MonodromyOutlook.SYMMETRIC
