"""Local arithmetic over Q_p and R."""

from .evaluation import (
    FiberSolvability,
    Indeterminate,
    LocalPoint,
    ScanResult,
    bm_scan,
    evaluate,
    evaluate_rational,
    fiber_bad_places,
    fiber_local_solvability,
    reciprocity_check,
    relevant_places,
    sample_local_points,
)
from .hilbert import REAL, Place, hilbert, is_local_square, locally_solvable

__all__ = [
    "FiberSolvability",
    "Indeterminate",
    "LocalPoint",
    "Place",
    "REAL",
    "ScanResult",
    "bm_scan",
    "evaluate",
    "evaluate_rational",
    "fiber_bad_places",
    "fiber_local_solvability",
    "hilbert",
    "is_local_square",
    "locally_solvable",
    "reciprocity_check",
    "relevant_places",
    "sample_local_points",
]
