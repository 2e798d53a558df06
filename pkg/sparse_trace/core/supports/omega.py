"""
omega.py - Root-of-unity filtering of support collections.

A tuple omega of roots of unity is given exactly as orders k_i and residues
r_i (omega_i = exp(2 pi i r_i / k_i)). The lattice L_omega holds the exponents
alpha with omega^alpha = 1, i.e. sum r_i alpha_i / k_i in Z.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np

from ...err import PreconditionError
from .lattice import LatticePoint, Support, SupportCollection, check_subset


@dataclass(frozen=True, slots=True)
class RootsOfUnity:
    """
    Exact tuple of roots of unity.

    Attributes:
        orders (Tuple[int, ...]): Positive orders ``k_i``.
        residues (Tuple[int, ...]): Exponents ``r_i`` (taken modulo ``k_i``).
    """

    orders: Tuple[int, ...]
    residues: Tuple[int, ...]

    def __post_init__(self):
        if len(self.orders) != len(self.residues):
            raise PreconditionError("Orders and residues differ in length.", code="bad_omega")
        if any(int(k) == 0 for k in self.orders):
            raise PreconditionError("Root of unity with order 0.", code="zero_order")
        orders = tuple(abs(int(k)) for k in self.orders)
        residues = tuple(int(r) % k for r, k in zip(self.residues, orders))
        object.__setattr__(self, "orders", orders)
        object.__setattr__(self, "residues", residues)

    @classmethod
    def from_signs(cls, signs: Sequence[int]) -> "RootsOfUnity":
        """``(1, -1, ...)`` shorthand for square roots of unity."""
        if any(s not in (1, -1) for s in signs):
            raise PreconditionError("Signs must be +1 or -1.", code="bad_omega")
        return cls(tuple(2 for _ in signs), tuple(0 if s == 1 else 1 for s in signs))

    def fixes(self, alpha: Sequence[int]) -> bool:
        """``omega^alpha == 1``, decided over a common denominator."""
        common = lcm(*self.orders)
        return sum(r * (common // k) * a for r, k, a in zip(self.residues, self.orders, alpha)) % common == 0

    def complex_values(self) -> np.ndarray:
        return np.exp(2j * np.pi * np.array(self.residues) / np.array(self.orders))

    def serialize(self) -> Dict[str, Any]:
        return {"orders": list(self.orders), "residues": list(self.residues)}


@dataclass(frozen=True, slots=True)
class OmegaSupport:
    """``C^omega`` and the number of its nonempty members over the chosen ``I``."""

    members: Tuple[Support, ...]
    delta: int

    def points(self) -> Tuple[Tuple[LatticePoint, ...], ...]:
        return tuple(m.points for m in self.members)


def omega_support(
    collection: SupportCollection, omega: RootsOfUnity, subset: Optional[Sequence[int]] = None
) -> OmegaSupport:
    """
    Remove from each member the exponents fixed by ``omega``.

    Args:
        collection (SupportCollection): The collection ``C``.
        omega (RootsOfUnity): One root per coordinate.
        subset (Optional[Sequence[int]]): 0-based ``I`` over which nonempty
            members are counted; all members by default.

    Returns:
        OmegaSupport: the filtered members (possibly empty) and ``delta_I``.
    """
    if len(omega.orders) != collection.ambient_dim:
        raise PreconditionError("Omega must have one root per coordinate.", code="bad_omega")
    members = tuple(s.filter(lambda p: not omega.fixes(p)) for s in collection)
    idx = range(len(members)) if subset is None else check_subset(subset, len(members))
    delta = sum(1 for i in idx if not members[i].is_empty())
    return OmegaSupport(members, delta)
