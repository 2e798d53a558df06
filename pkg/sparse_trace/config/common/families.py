"""
families.py - Built-in support families.

Each family builds a SupportCollection from a few integer parameters; the
explicit family takes the point lists themselves.
"""

from itertools import product
from typing import Any, List, Optional, Sequence

from ...core.supports.lattice import SupportCollection
from ...err import ConfigError
from ..base.representation import SupportFamily

LatticeRows = List[List[int]]


def simplex_points(degree: int, n: int, floor: int = 0) -> LatticeRows:
    """Points of ``degree * simplex_n`` with total degree at least ``floor``."""
    return [list(p) for p in product(range(degree + 1), repeat=n) if floor <= sum(p) <= degree]


def rectangle_points(width: int, height: int) -> LatticeRows:
    return [[i, j] for i in range(width + 1) for j in range(height + 1)]


def _positive(name: str, value: Any) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise ConfigError(f"Parameter '{name}' must be a positive integer, got {value!r}.")
    return value


class DilatedSimplexFamily(SupportFamily):
    """Dense systems: member ``i`` is ``degrees[i] * simplex_n`` with ``n = len(degrees)``."""

    def __init__(self, name: str = "dilated_simplex", degrees: Sequence[int] = (2, 2), **kwargs: Any):
        super().__init__(name, {"degrees": list(degrees)}, **kwargs)

    def generic_factory(self, degrees: Sequence[int] = (2, 2)) -> SupportCollection:
        n = len(degrees)
        if n == 0:
            raise ConfigError("A dilated simplex family needs at least one degree.")
        return SupportCollection.from_lists(
            [simplex_points(_positive("degrees", d), n) for d in degrees], n
        )


class RectangleFamily(SupportFamily):
    """Planar pairs of rectangles ``[0, k] x [0, l]``."""

    def __init__(self, name: str = "rectangles", shapes: Sequence[Sequence[int]] = ((1, 2), (2, 1)), **kwargs: Any):
        super().__init__(name, {"shapes": [list(s) for s in shapes]}, **kwargs)

    def generic_factory(self, shapes: Sequence[Sequence[int]] = ((1, 2), (2, 1))) -> SupportCollection:
        if len(shapes) != 2 or any(len(s) != 2 for s in shapes):
            raise ConfigError("Rectangle families take two (width, height) pairs.")
        return SupportCollection.from_lists(
            [rectangle_points(_positive("width", k), _positive("height", l)) for k, l in shapes], 2
        )


class TruncatedSimplexFamily(SupportFamily):
    """
    ``degree * simplex_n`` without the monomials of total degree ``<= drop``.

    With ``drop = -1`` nothing is removed.
    """

    def __init__(self, name: str = "truncated_simplex", degree: int = 5, drop: int = 3, n: int = 2, **kwargs: Any):
        super().__init__(name, {"degree": degree, "drop": drop, "n": n}, **kwargs)

    def generic_factory(self, degree: int = 5, drop: int = 3, n: int = 2) -> SupportCollection:
        _positive("degree", degree)
        _positive("n", n)
        if not -1 <= drop < degree:
            raise ConfigError(f"Parameter 'drop' must lie in [-1, {degree - 1}], got {drop}.")
        points = simplex_points(degree, n, floor=drop + 1)
        return SupportCollection.from_lists([points for _ in range(n)], n)


class ExplicitFamily(SupportFamily):
    """A fixed collection given by its point lists."""

    def __init__(self, name: str, supports: Optional[Sequence[LatticeRows]] = None, **kwargs: Any):
        if not supports:
            raise ConfigError(f"Explicit family '{name}' has no supports.")
        super().__init__(name, {"supports": [[list(p) for p in s] for s in supports]}, **kwargs)

    def generic_factory(self, supports: Sequence[LatticeRows] = ()) -> SupportCollection:
        if not supports:
            raise ConfigError(f"Explicit family '{self.name}' has no supports.")
        return SupportCollection.from_lists(supports)


FAMILY_TYPES = {
    "dilated_simplex": DilatedSimplexFamily,
    "rectangles": RectangleFamily,
    "truncated_simplex": TruncatedSimplexFamily,
    "explicit": ExplicitFamily,
}
