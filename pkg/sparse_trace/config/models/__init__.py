from .families import FamilyEntry, FamilyFile
from .settings import Settings, SolverConfig, TraceTestConfig, TrackerConfig

__all__ = ["FamilyEntry", "FamilyFile", "Settings", "SolverConfig", "TraceTestConfig", "TrackerConfig"]
