"""
polytope.py - Exact lattice polytopes.

Facets are enumerated with Qhull and then rebuilt in exact integer arithmetic:
every facet normal is recomputed from its defining lattice points and checked
against every input point, so the resulting H-representation never depends on
floating point. Lower dimensional hulls are handled in the coordinates of
their own difference lattice.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import TYPE_CHECKING, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.spatial import ConvexHull, QhullError
from sympy import Matrix

from ...err import HullError
from ..intmath import (
    Vector,
    coordinates_solver,
    hyperplane_normal,
    integer_det,
    integral_coordinates,
    lattice_basis,
)

if TYPE_CHECKING:
    from ..supports.lattice import Support

logger = logging.getLogger(__name__)

Facet = Tuple[Vector, int]


@dataclass(frozen=True, slots=True)
class Polytope:
    """
    Convex hull of finitely many lattice points.

    Facets ``a . y <= b`` are stored in frame coordinates ``y`` where a point
    ``p`` equals ``origin + sum(y_j * frame[j])``. Full dimensional polytopes
    use the standard frame, so their facets are in ambient coordinates.

    Attributes:
        points (Tuple[Vector, ...]): The generating points, sorted.
        vertices (Tuple[Vector, ...]): Extreme points, sorted.
        facets (Tuple[Facet, ...]): Primitive integer normals with offsets.
        dimension (int): Affine dimension of the hull.
        ambient_dim (int): ``n``.
        origin (Vector): Frame origin.
        frame (Tuple[Vector, ...]): Lattice basis of the affine hull.
    """

    points: Tuple[Vector, ...]
    vertices: Tuple[Vector, ...]
    facets: Tuple[Facet, ...]
    dimension: int
    ambient_dim: int
    origin: Vector
    frame: Tuple[Vector, ...]

    @property
    def degenerate(self) -> bool:
        return self.dimension < self.ambient_dim

    def local(self, point: Sequence[int]) -> Optional[Tuple[Fraction, ...]]:
        """Frame coordinates of ``point`` or ``None`` when it is off the affine hull."""
        shifted = [int(p) - o for p, o in zip(point, self.origin)]
        return coordinates_solver(self.frame, self.ambient_dim)(shifted)

    def contains(self, point: Sequence[int]) -> bool:
        y = self.local(point)
        if y is None:
            return False
        return all(sum(a * c for a, c in zip(normal, y)) <= b for normal, b in self.facets)

    def exit_time(self, point: Sequence[int], coord: int = 0) -> Fraction:
        """
        Largest ``t >= 0`` with ``point + t * e_coord`` in the hull.

        Args:
            point (Sequence[int]): A point of the hull.
            coord (int): Axis index of the ray direction.

        Returns:
            Fraction: The exit parameter; 0 when the direction leaves the
            affine hull immediately.
        """
        return exit_times(self, [point], coord)[0]


def exit_times(polytope: Polytope, points: Sequence[Sequence[int]], coord: int = 0) -> List[Fraction]:
    """Vectorised :meth:`Polytope.exit_time` sharing one frame solve."""
    n = polytope.ambient_dim
    unit = tuple(1 if i == coord else 0 for i in range(n))
    if polytope.degenerate:
        solve = coordinates_solver(polytope.frame, n)
        w = solve(unit)
        if w is None:
            return [Fraction(0) for _ in points]
        local = [solve([int(p) - o for p, o in zip(pt, polytope.origin)]) for pt in points]
    else:
        w = unit
        local = [tuple(int(v) for v in pt) for pt in points]

    rates = [(normal, b, sum(a * c for a, c in zip(normal, w))) for normal, b in polytope.facets]
    rates = [(normal, b, rate) for normal, b, rate in rates if rate > 0]
    if not rates:
        raise HullError("Ray never leaves the hull; polytope is unbounded.")
    out = []
    for pt, y in zip(points, local):
        if y is None:
            raise HullError(f"Point {tuple(pt)} is not on the hull.")
        best = min(Fraction(b - sum(a * c for a, c in zip(normal, y))) / rate for normal, b, rate in rates)
        out.append(max(best, Fraction(0)))
    return out


def _unit_frame(n: int) -> Tuple[Vector, ...]:
    return tuple(tuple(1 if i == j else 0 for i in range(n)) for j in range(n))


def _points_of(source: Union["Support", Iterable[Sequence[int]]]) -> Tuple[List[Vector], int]:
    if hasattr(source, "points") and hasattr(source, "ambient_dim"):
        return [tuple(p) for p in source.points], source.ambient_dim
    pts = [tuple(int(v) for v in p) for p in source]
    if not pts:
        raise HullError("Convex hull of an empty point set.")
    return pts, len(pts[0])


def convex_hull(source: Union["Support", Iterable[Sequence[int]]]) -> Polytope:
    """
    Canonical exact hull of a support or a point list.

    Args:
        source: A Support or an iterable of integer points.

    Returns:
        Polytope: Sorted vertices, exact facets and the affine dimension.

    Raises:
        HullError: if the point set is empty or exact facet verification fails.
    """
    pts, n = _points_of(source)
    if not pts:
        raise HullError("Convex hull of an empty point set.")
    pts = sorted(set(pts))
    base = pts[0]
    diffs = [tuple(a - b for a, b in zip(p, base)) for p in pts[1:]]
    basis = lattice_basis([d for d in diffs if any(d)], n)
    r = len(basis)

    if r == n:
        origin, frame = tuple(0 for _ in range(n)), _unit_frame(n)
        local = [tuple(p) for p in pts]
    else:
        origin, frame = base, tuple(basis)
        coords = integral_coordinates(frame, n)
        local = [coords([a - b for a, b in zip(p, base)]) for p in pts]

    if r == 0:
        facets: List[Facet] = []
    elif r == 1:
        values = [y[0] for y in local]
        facets = [((-1,), -min(values)), ((1,), max(values))]
    else:
        facets = _exact_facets(local, r)

    vertices = tuple(p for p, y in zip(pts, local) if _is_vertex(y, facets, r))
    if r > 0 and len(vertices) < r + 1:
        raise HullError(f"Hull of dimension {r} has only {len(vertices)} vertices.")
    return Polytope(tuple(pts), vertices, tuple(sorted(facets)), r, n, origin, frame)


def _exact_facets(local: List[Vector], r: int) -> List[Facet]:
    try:
        hull = ConvexHull(np.array(local, dtype=float))
    except QhullError as e:
        raise HullError(f"Qhull failed on a {r}-dimensional point set.") from e

    found = {}
    for simplex in hull.simplices:
        corners = [local[i] for i in simplex]
        normal = hyperplane_normal(corners)
        if normal is None:
            continue
        b = sum(a * c for a, c in zip(normal, corners[0]))
        values = [sum(a * c for a, c in zip(normal, y)) for y in local]
        if max(values) <= b:
            facet = (normal, b)
        elif min(values) >= b:
            facet = (tuple(-a for a in normal), -b)
        else:
            raise HullError(f"Candidate facet {normal} separates input points.")
        found[facet] = True
    logger.debug(f"Exact hull in dimension {r}: {len(found)} facets from {len(hull.simplices)} simplices")
    return list(found)


def _is_vertex(y: Sequence[int], facets: Sequence[Facet], r: int) -> bool:
    if r == 0:
        return True
    tight = [list(normal) for normal, b in facets if sum(a * c for a, c in zip(normal, y)) == b]
    if len(tight) < r:
        return False
    return Matrix(tight).rank() == r


def euclidean_volume(polytope: Polytope) -> Fraction:
    """
    Exact ``n``-dimensional volume.

    The boundary is triangulated by Qhull and each boundary simplex is coned
    from the lexicographically least vertex; the determinants are exact.
    Degenerate polytopes have volume 0, except segments in dimension 1.
    """
    n = polytope.ambient_dim
    if polytope.degenerate:
        return Fraction(0)
    if n == 1:
        values = [v[0] for v in polytope.vertices]
        return Fraction(max(values) - min(values))
    apex = polytope.vertices[0]
    verts = list(polytope.vertices)
    hull = ConvexHull(np.array(verts, dtype=float))
    total = 0
    for simplex in hull.simplices:
        rows = [[verts[i][k] - apex[k] for k in range(n)] for i in simplex]
        total += abs(integer_det(rows))
    return Fraction(total, factorial(n))


def minkowski_sum(*polytopes: Polytope) -> Polytope:
    """Hull of all vertex sums."""
    if not polytopes:
        raise HullError("Minkowski sum of nothing.")
    acc = list(polytopes[0].vertices)
    for p in polytopes[1:]:
        acc = sorted({tuple(a + b for a, b in zip(u, v)) for u in acc for v in p.vertices})
    return convex_hull(acc)
