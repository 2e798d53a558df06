"""
traces.py - Traces, centroids and the collinearity decision.
"""

from __future__ import annotations

import math
from typing import Sequence, Tuple, Union

import numpy as np

from ..base.polysys.system import TorusPoint, as_array
from ..err import PreconditionError

PointLike = Union[TorusPoint, Sequence[complex], np.ndarray]


def _coords(points: Sequence[PointLike]) -> np.ndarray:
    if len(points) == 0:
        raise PreconditionError("Trace of an empty point set.", code="empty_solution_set")
    return np.array([as_array(p) for p in points])


def _fsum(values: np.ndarray) -> complex:
    return complex(math.fsum(values.real), math.fsum(values.imag))


def trace(points: Sequence[PointLike], coord: int = 0) -> complex:
    """Sum of coordinate ``coord`` (0-based) over ``points``, correctly rounded."""
    stack = _coords(points)
    if not 0 <= coord < stack.shape[1]:
        raise PreconditionError(f"Coordinate {coord} out of range.", code="bad_axis")
    return _fsum(stack[:, coord])


def trace_vector(points: Sequence[PointLike]) -> np.ndarray:
    stack = _coords(points)
    return np.array([_fsum(stack[:, i]) for i in range(stack.shape[1])])


def centroid(points: Sequence[PointLike]) -> np.ndarray:
    return trace_vector(points) / len(points)


def monomial_trace(points: Sequence[PointLike], exponent: Sequence[int]) -> complex:
    """Sum of ``x^exponent`` over ``points``."""
    stack = _coords(points)
    return _fsum(np.prod(np.power(stack, np.asarray(exponent, dtype=np.int64)[None, :]), axis=1))


def relative_gap(first: complex, second: complex) -> float:
    return abs(first - second) / max(1.0, abs(first), abs(second))


def collinear(p0: complex, ph: complex, p1: complex, rel_tol: float = 1e-6) -> Tuple[bool, float]:
    """
    Whether the samples at ``t = 0, 1/2, 1`` lie on a line.

    Returns:
        Tuple[bool, float]: the verdict and
        ``|ph - (p0 + p1) / 2| / max(1, |p0|, |p1|)``.
    """
    residual = abs(ph - (p0 + p1) / 2) / max(1.0, abs(p0), abs(p1))
    return residual <= rel_tol, float(residual)


def affine_fit_deviation(ts: Sequence[float], values: Sequence[complex]) -> float:
    """Largest distance from ``values`` to their least squares line in ``t``."""
    ts = np.asarray(ts, dtype=float)
    values = np.asarray(values, dtype=complex)
    design = np.column_stack([np.ones_like(ts), ts]).astype(complex)
    coeffs, *_ = np.linalg.lstsq(design, values, rcond=None)
    return float(np.max(np.abs(design @ coeffs - values)))
