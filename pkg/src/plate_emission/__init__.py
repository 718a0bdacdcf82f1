"""Spontaneous emission of a two-level atom between conducting and permeable plates."""

from .core import (
    CC,
    CP,
    PC,
    PP,
    DipoleOrientation,
    Geometry,
    GeometryError,
    Material,
    PlateConfiguration,
    RateRatios,
    Transition,
    canonicalize,
)
from .rates import (
    SuppressionReport,
    free_space_components,
    free_space_rate,
    par_ratio,
    perp_ratio,
    ratio,
    slab_average,
    suppression_threshold,
    total_ratio,
)

__all__ = [
    "CC", "CP", "PC", "PP",
    "DipoleOrientation", "Geometry", "GeometryError", "Material", "PlateConfiguration", "RateRatios",
    "Transition", "canonicalize",
    "SuppressionReport", "free_space_components", "free_space_rate", "par_ratio", "perp_ratio", "ratio",
    "slab_average", "suppression_threshold", "total_ratio",
]
