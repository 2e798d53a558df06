from __future__ import annotations

from .polytope import Polytope, convex_hull, euclidean_volume, minkowski_sum, exit_times
from .mixed import mixed_volume, relative_mixed_volume, lattice_coordinates

__all__ = [
    "Polytope",
    "convex_hull",
    "euclidean_volume",
    "minkowski_sum",
    "exit_times",
    "mixed_volume",
    "relative_mixed_volume",
    "lattice_coordinates",
]
