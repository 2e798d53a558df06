from .loops import Permutation, compose, match_points, monodromy_loop, transport
from .paths import PathOutcome, PathStatus, min_pairwise_distance, track_segment, track_set

__all__ = [
    "Permutation",
    "compose",
    "match_points",
    "monodromy_loop",
    "transport",
    "PathOutcome",
    "PathStatus",
    "min_pairwise_distance",
    "track_segment",
    "track_set",
]
