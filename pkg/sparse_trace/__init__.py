from __future__ import annotations

__version__ = "0.1.0"

from .core.supports.lattice import Support as _Support
from .core.supports.lattice import SupportCollection as _SupportCollection
from .core.supports.monomial import MonomialMap as _MonomialMap
from .core.mixedvol.mixed import mixed_volume as _mixed_volume

from .base.polysys.system import SparseSystem as _SparseSystem
from .base.polysys.system import TorusPoint as _TorusPoint
from .base.solver.torus import SolutionSet as _SolutionSet
from .base.solver.torus import solve_torus as _solve_torus

from .logic.tracetest import sparse_trace_test as _sparse_trace_test
from .logic.tracetest import constant_sparse_trace_test as _constant_sparse_trace_test

from .config.common.loader import load_settings as _load_settings
from .config.common.standard import CommonSupportStandard as _CommonSupportStandard


# Supports
Support = _Support
SupportCollection = _SupportCollection
MonomialMap = _MonomialMap
mixed_volume = _mixed_volume

# Systems and solving
SparseSystem = _SparseSystem
TorusPoint = _TorusPoint
SolutionSet = _SolutionSet
solve_torus = _solve_torus

# Trace tests
sparse_trace_test = _sparse_trace_test
constant_sparse_trace_test = _constant_sparse_trace_test

# Configuration
load_settings = _load_settings
CommonSupportStandard = _CommonSupportStandard
