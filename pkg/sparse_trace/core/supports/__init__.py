from __future__ import annotations

from .lattice import (
    LatticePoint,
    Support,
    SupportCollection,
    SublatticeInfo,
    difference_lattice,
    collection_lattice,
    saturation,
)
from .monomial import MonomialMap
from .offsets import offset, exit_parameters, tal_candidate, unnecessary_candidate
from .classify import (
    Reduction,
    MonodromyOutlook,
    defect,
    has_positive_mixed_volume_by_defect,
    is_lacunary,
    is_abundant,
    is_triangular,
    is_strictly_triangular,
    triangular_witnesses,
    lacunary_reduction,
    triangular_reduction,
    is_essential,
    essential_complement,
    monodromy_outlook,
)
from .omega import RootsOfUnity, OmegaSupport, omega_support

__all__ = [
    "LatticePoint",
    "Support",
    "SupportCollection",
    "SublatticeInfo",
    "difference_lattice",
    "collection_lattice",
    "saturation",
    "MonomialMap",
    "offset",
    "exit_parameters",
    "tal_candidate",
    "unnecessary_candidate",
    "Reduction",
    "MonodromyOutlook",
    "defect",
    "has_positive_mixed_volume_by_defect",
    "is_lacunary",
    "is_abundant",
    "is_triangular",
    "is_strictly_triangular",
    "triangular_witnesses",
    "lacunary_reduction",
    "triangular_reduction",
    "is_essential",
    "essential_complement",
    "monodromy_outlook",
    "RootsOfUnity",
    "OmegaSupport",
    "omega_support",
]
