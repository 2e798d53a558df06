"""
lattice.py - Supports, support collections and their difference lattices.

A support is a finite set of exponent vectors in Z^n. Everything here is exact:
points are tuples of Python ints and lattice data comes from integer echelon
and Smith normal forms.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import inf, prod
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from ...err import PreconditionError, SerializationError
from ..intmath import (
    Vector,
    echelon_columns,
    integral_coordinates,
    invariant_factors,
    lattice_basis,
    unimodular_inverse,
)

logger = logging.getLogger(__name__)

LatticePoint = Tuple[int, ...]
IndexSubset = Tuple[int, ...]


def _as_point(coords: Iterable[Any]) -> LatticePoint:
    out = []
    for c in coords:
        if isinstance(c, bool) or int(c) != c:
            raise PreconditionError(f"Exponent {c!r} is not an integer.", code="non_integer_exponent")
        out.append(int(c))
    return tuple(out)


@dataclass(frozen=True, slots=True)
class Support:
    """
    Finite set of lattice points of a common ambient dimension.

    Points are stored in lexicographic order, which is the canonical order
    used for coefficient vectors. Supports read from user input must be
    nonempty; subsets produced by the toolkit (offset complements,
    omega filtering) may be empty and are reported as such.

    Attributes:
        points (Tuple[LatticePoint, ...]): Sorted, duplicate free points.
        ambient_dim (int): Dimension ``n`` of the ambient lattice.
    """

    points: Tuple[LatticePoint, ...]
    ambient_dim: int

    def __post_init__(self):
        if self.ambient_dim < 1:
            raise PreconditionError("Ambient dimension must be positive.", code="bad_dimension")
        for p in self.points:
            if len(p) != self.ambient_dim:
                raise PreconditionError(
                    f"Point {p} has length {len(p)}, expected {self.ambient_dim}.",
                    code="dimension_mismatch",
                )
        if len(set(self.points)) != len(self.points):
            raise PreconditionError("Support contains duplicate points.", code="duplicate_point")
        if list(self.points) != sorted(self.points):
            object.__setattr__(self, "points", tuple(sorted(self.points)))

    @classmethod
    def from_points(cls, points: Iterable[Iterable[Any]], ambient_dim: Optional[int] = None) -> "Support":
        pts = [_as_point(p) for p in points]
        if ambient_dim is None:
            if not pts:
                raise PreconditionError("Cannot infer the dimension of an empty support.", code="empty_support")
            ambient_dim = len(pts[0])
        return cls(tuple(sorted(pts)), ambient_dim)

    @classmethod
    def empty(cls, ambient_dim: int) -> "Support":
        return cls((), ambient_dim)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[LatticePoint]:
        return iter(self.points)

    def __contains__(self, point: object) -> bool:
        return tuple(point) in self._lookup() if isinstance(point, (tuple, list)) else False

    def _lookup(self) -> frozenset:
        return frozenset(self.points)

    def is_empty(self) -> bool:
        return not self.points

    def index_of(self, point: Sequence[int]) -> int:
        """Position of ``point`` in the canonical order."""
        return self.points.index(tuple(point))

    def translate(self, shift: Sequence[int]) -> "Support":
        return Support(tuple(tuple(a + s for a, s in zip(p, shift)) for p in self.points), self.ambient_dim)

    def min_corner(self) -> LatticePoint:
        """Coordinate-wise minimum; translating by its negative makes every minimum 0."""
        self._require_nonempty()
        return tuple(min(p[i] for p in self.points) for i in range(self.ambient_dim))

    def normalized(self) -> Tuple["Support", LatticePoint]:
        """Translate so the minimum over each coordinate is 0; returns the applied shift."""
        shift = tuple(-c for c in self.min_corner())
        return self.translate(shift), shift

    def issubset(self, other: "Support") -> bool:
        return self._lookup() <= other._lookup()

    def union(self, other: "Support") -> "Support":
        self._same_dim(other)
        return Support(tuple(sorted(self._lookup() | other._lookup())), self.ambient_dim)

    def difference(self, other: "Support") -> "Support":
        self._same_dim(other)
        drop = other._lookup()
        return Support(tuple(p for p in self.points if p not in drop), self.ambient_dim)

    def filter(self, keep) -> "Support":
        return Support(tuple(p for p in self.points if keep(p)), self.ambient_dim)

    def differences(self) -> List[Vector]:
        """Generators ``alpha - alpha_0`` of the difference lattice."""
        self._require_nonempty()
        base = self.points[0]
        return [tuple(a - b for a, b in zip(p, base)) for p in self.points[1:]]

    def serialize(self) -> List[List[int]]:
        return [list(p) for p in self.points]

    def _same_dim(self, other: "Support") -> None:
        if other.ambient_dim != self.ambient_dim:
            raise PreconditionError("Supports live in different dimensions.", code="dimension_mismatch")

    def _require_nonempty(self) -> None:
        if not self.points:
            raise PreconditionError("Support is empty.", code="empty_support")


@dataclass(frozen=True, slots=True)
class SupportCollection:
    """
    Ordered tuple of supports ``(A_1, ..., A_N)`` sharing an ambient dimension.

    Attributes:
        supports (Tuple[Support, ...]): The members.
        ambient_dim (int): Dimension ``n``.
    """

    supports: Tuple[Support, ...]
    ambient_dim: int

    def __post_init__(self):
        if not self.supports:
            raise PreconditionError("A support collection needs at least one member.", code="empty_collection")
        for s in self.supports:
            if s.ambient_dim != self.ambient_dim:
                raise PreconditionError("Collection members differ in dimension.", code="dimension_mismatch")

    @classmethod
    def from_lists(cls, supports: Sequence[Iterable[Iterable[Any]]], ambient_dim: Optional[int] = None) -> "SupportCollection":
        if ambient_dim is None:
            first = next((s for s in supports if len(list(s)) > 0), None)
            if first is None:
                raise PreconditionError("Cannot infer the dimension of empty supports.", code="empty_support")
            ambient_dim = len(list(first)[0])
        return cls(tuple(Support.from_points(s, ambient_dim) for s in supports), ambient_dim)

    @classmethod
    def deserialize(cls, payload: Dict[str, Any]) -> "SupportCollection":
        from pydantic import ValidationError

        from .models.support import SupportsPayload

        try:
            data = SupportsPayload.model_validate(payload)
        except ValidationError as e:
            raise SerializationError(f"Invalid support collection: {e.errors()[0]['msg']}") from e
        return cls.from_lists(data.supports, data.n)

    def serialize(self) -> Dict[str, Any]:
        return {"n": self.ambient_dim, "supports": [s.serialize() for s in self.supports]}

    def __len__(self) -> int:
        return len(self.supports)

    def __iter__(self) -> Iterator[Support]:
        return iter(self.supports)

    def __getitem__(self, i: int) -> Support:
        return self.supports[i]

    def square(self) -> bool:
        return len(self.supports) == self.ambient_dim

    def require_square(self) -> None:
        if not self.square():
            raise PreconditionError(
                f"Collection has {len(self.supports)} supports in dimension {self.ambient_dim}; a square collection is required.",
                code="not_square",
            )

    def require_nonempty_members(self) -> None:
        for i, s in enumerate(self.supports):
            if s.is_empty():
                raise PreconditionError(f"Support {i} is empty.", code="empty_support")

    def restrict(self, subset: Sequence[int]) -> "SupportCollection":
        """Subcollection ``A_I``."""
        idx = check_subset(subset, len(self.supports))
        return SupportCollection(tuple(self.supports[i] for i in idx), self.ambient_dim)

    def issubset(self, other: "SupportCollection") -> bool:
        return len(self) == len(other) and all(a.issubset(b) for a, b in zip(self, other))

    def union(self, other: "SupportCollection") -> "SupportCollection":
        self._same_shape(other)
        return SupportCollection(tuple(a.union(b) for a, b in zip(self, other)), self.ambient_dim)

    def difference(self, other: "SupportCollection") -> "SupportCollection":
        self._same_shape(other)
        return SupportCollection(tuple(a.difference(b) for a, b in zip(self, other)), self.ambient_dim)

    def translate(self, shifts: Sequence[Sequence[int]]) -> "SupportCollection":
        return SupportCollection(tuple(s.translate(v) for s, v in zip(self.supports, shifts)), self.ambient_dim)

    def normalized(self) -> Tuple["SupportCollection", Tuple[LatticePoint, ...]]:
        """Translate every member so its coordinate minima are 0; returns the shifts."""
        pairs = [s.normalized() for s in self.supports]
        return (
            SupportCollection(tuple(p[0] for p in pairs), self.ambient_dim),
            tuple(p[1] for p in pairs),
        )

    def anchored(self) -> Tuple["SupportCollection", Tuple[LatticePoint, ...]]:
        """Translate every member so its lexicographically least point is the origin."""
        shifts = tuple(tuple(-c for c in s.points[0]) for s in self.supports)
        return self.translate(shifts), shifts

    def _same_shape(self, other: "SupportCollection") -> None:
        if len(self) != len(other) or self.ambient_dim != other.ambient_dim:
            raise PreconditionError("Collections differ in shape.", code="shape_mismatch")


@dataclass(frozen=True, slots=True)
class SublatticeInfo:
    """
    Basis and Smith normal form data of a sublattice of Z^n.

    Attributes:
        basis (Tuple[Vector, ...]): Echelon basis columns; ``basis[0]`` is
            ``k * e_1`` when the rank is full.
        rank (int): Rank of the lattice.
        invariant_factors (Tuple[int, ...]): ``k_1 | k_2 | ... | k_r``.
        ambient_dim (int): ``n``.
    """

    basis: Tuple[Vector, ...]
    rank: int
    invariant_factors: Tuple[int, ...]
    ambient_dim: int
    index: Union[int, float] = field(init=False)

    def __post_init__(self):
        if self.rank != len(self.invariant_factors):
            raise ValueError("Rank must equal the number of invariant factors.")
        index = prod(self.invariant_factors) if self.rank == self.ambient_dim else inf
        object.__setattr__(self, "index", index)

    @property
    def full_rank(self) -> bool:
        return self.rank == self.ambient_dim

    def contains(self, vector: Sequence[int]) -> bool:
        """Membership test by echelon reduction of ``vector`` against the basis."""
        return integral_coordinates(self.basis, self.ambient_dim)(vector) is not None

    def contains_unit(self, coord: int = 0) -> bool:
        return self.contains(tuple(1 if i == coord else 0 for i in range(self.ambient_dim)))

    def serialize(self) -> Dict[str, Any]:
        return {
            "basis": [list(b) for b in self.basis],
            "rank": self.rank,
            "invariant_factors": list(self.invariant_factors),
            "index": self.index if self.full_rank else "inf",
        }


def sublattice(generators: Sequence[Sequence[int]], ambient_dim: int) -> SublatticeInfo:
    """SublatticeInfo of the lattice generated by arbitrary integer ``generators``."""
    basis = lattice_basis([g for g in generators if any(g)], ambient_dim)
    factors = invariant_factors(basis, ambient_dim)
    return SublatticeInfo(tuple(basis), len(basis), tuple(factors), ambient_dim)


def difference_lattice(support: Support) -> SublatticeInfo:
    """
    Lattice ``L[A]`` generated by all differences of points of ``A``.

    Differences against the lexicographically least point generate the same
    lattice as all pairwise differences. A singleton support gives rank 0
    and index infinity.

    Args:
        support (Support): Nonempty support.

    Returns:
        SublatticeInfo: Echelon basis, rank and invariant factors.
    """
    info = sublattice(support.differences(), support.ambient_dim)
    logger.debug(f"L[A] for {len(support)} points: rank {info.rank}, factors {info.invariant_factors}")
    return info


def collection_lattice(collection: SupportCollection) -> SublatticeInfo:
    """Lattice ``L[C]`` generated by the union of the member difference lattices."""
    collection.require_nonempty_members()
    generators: List[Vector] = []
    for support in collection:
        generators.extend(support.differences())
    return sublattice(generators, collection.ambient_dim)


def check_subset(subset: Sequence[int], size: int) -> IndexSubset:
    """Validate a 0-based index subset and return it sorted."""
    idx = tuple(sorted(set(int(i) for i in subset)))
    if not idx:
        raise PreconditionError("Index subset must be nonempty.", code="empty_subset")
    if idx[0] < 0 or idx[-1] >= size:
        raise PreconditionError(f"Index subset {idx} out of range 0..{size - 1}.", code="bad_subset")
    return idx


def saturation(info: SublatticeInfo) -> Tuple[Tuple[Vector, ...], Tuple[Vector, ...]]:
    """
    Basis of the saturation ``span_Q(L) ∩ Z^n`` and a complement.

    Row operations bring the basis matrix to echelon form ``V M``; the
    columns of ``V^-1`` paired with the nonzero rows span the saturation and
    the remaining columns complete it to a basis of Z^n.

    Returns:
        Tuple[Tuple[Vector, ...], Tuple[Vector, ...]]: ``(saturated, complement)``
        with ``len(saturated) == info.rank``.
    """
    n = info.ambient_dim
    if info.rank == 0:
        return (), tuple(tuple(1 if i == j else 0 for i in range(n)) for j in range(n))
    rows_as_columns = [tuple(b[k] for b in info.basis) for k in range(n)]
    _, trans, zeros = echelon_columns(rows_as_columns, info.rank)
    # V = trans^T, so the columns of V^-1 are the rows of trans^-1.
    inv = unimodular_inverse(trans)
    rows = [tuple(inv[j][i] for j in range(n)) for i in range(n)]
    return tuple(rows[zeros:]), tuple(rows[:zeros])
