"""
offsets.py - Offset sets and the trace-affine-linear / unnecessary candidates.

For a point alpha of A, t*(alpha) is the largest t >= 0 with
alpha + t e_coord in conv(A). offset(A, k) keeps the points with t* <= k,
i.e. the points within distance k of the boundary along e_coord.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Dict, Union

from ...err import PreconditionError
from ..mixedvol.polytope import convex_hull, exit_times
from .lattice import LatticePoint, Support, SupportCollection

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction, str]


def as_fraction(value: Rational) -> Fraction:
    """Parse ``int``, ``Fraction`` or a ``"p/q"`` string exactly."""
    if isinstance(value, float):
        raise PreconditionError("Offsets take exact rationals, not floats.", code="inexact_rational")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as e:
        raise PreconditionError(f"Cannot read {value!r} as a rational.", code="bad_rational") from e


def exit_parameters(support: Support, coord: int = 0) -> Dict[LatticePoint, Fraction]:
    """``t*`` for every point of ``support`` along ``e_coord``."""
    if support.is_empty():
        return {}
    if not 0 <= coord < support.ambient_dim:
        raise PreconditionError(f"Axis {coord} out of range.", code="bad_axis")
    hull = convex_hull(support)
    return dict(zip(support.points, exit_times(hull, support.points, coord)))


def offset(support: Support, k: Rational, coord: int = 0) -> Support:
    """
    Points of ``support`` with ``t* <= k``.

    Args:
        support (Support): Nonempty support.
        k (Rational): Nonnegative exact rational.
        coord (int): 0-based axis of the direction ``e_coord``.

    Returns:
        Support: The offset set, a subset of ``support``.
    """
    level = as_fraction(k)
    if level < 0:
        raise PreconditionError("Offset level must be nonnegative.", code="negative_offset")
    if support.is_empty():
        raise PreconditionError("Offset of an empty support.", code="empty_support")
    times = exit_parameters(support, coord)
    return support.filter(lambda p: times[p] <= level)


def _candidate(collection: SupportCollection, k: Fraction, coord: int) -> SupportCollection:
    from ..mixedvol.mixed import mixed_volume

    collection.require_square()
    if mixed_volume(collection) == 0:
        raise PreconditionError("Mixed volume is zero.", code="zero_mixed_volume")
    return SupportCollection(
        tuple(s.difference(offset(s, k, coord)) for s in collection), collection.ambient_dim
    )


def tal_candidate(collection: SupportCollection, coord: int = 0) -> SupportCollection:
    """``A \\ offset(A, 1/2)`` member-wise: a trace-affine-linear collection."""
    return _candidate(collection, Fraction(1, 2), coord)


def unnecessary_candidate(collection: SupportCollection, coord: int = 0) -> SupportCollection:
    """``A \\ offset(A, 1)`` member-wise: coefficients the trace does not depend on."""
    return _candidate(collection, Fraction(1), coord)
