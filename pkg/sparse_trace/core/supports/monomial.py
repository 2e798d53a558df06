"""
monomial.py - Integer linear maps on exponent lattices and the induced
monomial maps on the torus.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, Sequence, Tuple

import numpy as np

from ...err import NonIntegralError, PreconditionError
from ..intmath import Vector, columns_to_matrix, integer_det, to_fraction
from .lattice import LatticePoint, Support, SupportCollection


@dataclass(frozen=True, slots=True)
class MonomialMap:
    """
    Integer matrix ``Phi`` acting on exponents; column ``j`` is ``Phi(e_j)``.

    The torus map is ``phi(x)_i = x^{Phi(e_i)}``. For a system ``F`` on ``A``
    and ``B`` with ``Phi(B) = A``, the pulled-back system ``G`` on ``B``
    satisfies ``G(phi(x)) = F(x)``.

    Attributes:
        columns (Tuple[Vector, ...]): Images of the unit vectors.
        determinant (int): ``det(Phi)``, never zero.
    """

    columns: Tuple[Vector, ...]
    determinant: int = field(init=False)

    def __post_init__(self):
        n = len(self.columns)
        if n == 0 or any(len(c) != n for c in self.columns):
            raise PreconditionError("A monomial map needs a square integer matrix.", code="bad_matrix")
        cols = tuple(tuple(int(v) for v in c) for c in self.columns)
        object.__setattr__(self, "columns", cols)
        det = integer_det([[cols[j][i] for j in range(n)] for i in range(n)])
        if det == 0:
            raise PreconditionError("Monomial map is singular.", code="singular_map")
        object.__setattr__(self, "determinant", det)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "MonomialMap":
        n = len(rows)
        return cls(tuple(tuple(int(rows[i][j]) for i in range(n)) for j in range(n)))

    @classmethod
    def identity(cls, n: int) -> "MonomialMap":
        return cls(tuple(tuple(1 if i == j else 0 for i in range(n)) for j in range(n)))

    @property
    def dim(self) -> int:
        return len(self.columns)

    @property
    def rows(self) -> Tuple[Vector, ...]:
        n = self.dim
        return tuple(tuple(self.columns[j][i] for j in range(n)) for i in range(n))

    def is_unimodular(self) -> bool:
        return abs(self.determinant) == 1

    def apply_point(self, point: Sequence[int]) -> LatticePoint:
        return tuple(sum(r[j] * point[j] for j in range(self.dim)) for r in self.rows)

    def inverse_point(self, point: Sequence[int]) -> LatticePoint:
        """``Phi^-1(point)``; raises NonIntegralError when the preimage is not integral."""
        inv = self._inverse()
        out = []
        for i in range(self.dim):
            value = sum(inv[i][j] * int(point[j]) for j in range(self.dim))
            if value.denominator != 1:
                raise NonIntegralError(f"Point {tuple(point)} has no integral preimage.", point=list(point))
            out.append(int(value))
        return tuple(out)

    def _inverse(self):
        inv = columns_to_matrix(self.columns, self.dim).inv()
        return [[to_fraction(inv[i, j]) for j in range(self.dim)] for i in range(self.dim)]

    def apply_support(self, support: Support, inverse: bool = False) -> Support:
        move = self.inverse_point if inverse else self.apply_point
        return Support(tuple(move(p) for p in support.points), support.ambient_dim)

    def apply_collection(self, collection: SupportCollection, inverse: bool = False) -> SupportCollection:
        if collection.ambient_dim != self.dim:
            raise PreconditionError("Map and collection dimensions differ.", code="dimension_mismatch")
        return SupportCollection(
            tuple(self.apply_support(s, inverse) for s in collection.supports), collection.ambient_dim
        )

    def compose(self, other: "MonomialMap") -> "MonomialMap":
        """``self ∘ other``."""
        return MonomialMap(tuple(self.apply_point(c) for c in other.columns))

    def inverse(self) -> "MonomialMap":
        """Inverse map; only defined over Z for unimodular maps."""
        if not self.is_unimodular():
            raise NonIntegralError("Only unimodular maps have an integral inverse.", determinant=self.determinant)
        n = self.dim
        unit = [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
        return MonomialMap(tuple(self.inverse_point(e) for e in unit))

    def torus_map(self, x: np.ndarray) -> np.ndarray:
        """``phi(x)_i = x^{Phi(e_i)}`` for one point or a stack of points (last axis)."""
        x = np.asarray(x, dtype=complex)
        exps = np.array(self.columns, dtype=np.int64)
        return np.prod(np.power(x[..., None, :], exps), axis=-1)

    def serialize(self) -> Dict[str, Any]:
        return {"matrix": [list(r) for r in self.rows], "determinant": self.determinant}

    @classmethod
    def deserialize(cls, payload: Dict[str, Any]) -> "MonomialMap":
        return cls.from_rows(payload["matrix"])
