"""Concrete systems: the F₂ boundary action, ℤ^d grids, and two continuous leaves."""

from .continuous import CAT_MAP_LAMBDA, continuum_spec
from .f2 import (
    AveragingFamily,
    AveragingMeasure,
    BoundaryPoint,
    F2Point,
    busemann,
    busemann_cocycle,
    f2_averaging_set,
    f2_window,
    horosphere_level,
)
from .grid import grid_ball, grid_generators, grid_window

__all__ = [
    "AveragingFamily",
    "AveragingMeasure",
    "BoundaryPoint",
    "CAT_MAP_LAMBDA",
    "F2Point",
    "busemann",
    "busemann_cocycle",
    "continuum_spec",
    "f2_averaging_set",
    "f2_window",
    "grid_ball",
    "grid_generators",
    "grid_window",
    "horosphere_level",
]
