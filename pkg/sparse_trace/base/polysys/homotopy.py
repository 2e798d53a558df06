"""
homotopy.py - Straight segments between two systems on one collection.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ...err import PreconditionError
from .system import SparseSystem


@dataclass(frozen=True, slots=True)
class SegmentFamily:
    """
    The pencil ``H(t) = t * F + (1 - t) * gamma * G``.

    Attributes:
        target (SparseSystem): ``F``, reached at ``t = 1``.
        start (SparseSystem): ``G``, reached at ``t = 0``.
        gamma (complex): Unit constant; ``1`` keeps the segment real so that
            ``at(0) == G`` and ``at(1) == F`` coefficient-wise.
    """

    target: SparseSystem
    start: SparseSystem
    gamma: complex = 1.0

    def __post_init__(self):
        if self.target.collection != self.start.collection:
            raise PreconditionError("Segment endpoints live on different collections.", code="collection_mismatch")
        if not np.isclose(abs(self.gamma), 1.0):
            raise PreconditionError("gamma must have modulus 1.", code="bad_gamma")

    @property
    def collection(self):
        return self.target.collection

    def coefficients(self, t: float) -> np.ndarray:
        if t == 1:
            return self.target.flat
        if t == 0 and self.gamma == 1:
            return self.start.flat
        return t * self.target.flat + (1 - t) * self.gamma * self.start.flat

    def velocity(self) -> np.ndarray:
        """``dH/dt`` in coefficient space; constant along the segment."""
        return self.target.flat - self.gamma * self.start.flat

    def at(self, t: float) -> SparseSystem:
        if t == 1:
            return self.target
        if t == 0 and self.gamma == 1:
            return self.start
        return SparseSystem.from_flat(self.collection, self.coefficients(t))

    def reversed(self) -> "SegmentFamily":
        """Same path with ``t`` replaced by ``1 - t``; only valid for ``gamma == 1``."""
        if self.gamma != 1:
            raise PreconditionError("Only real segments can be reversed.", code="bad_gamma")
        return SegmentFamily(self.start, self.target)
