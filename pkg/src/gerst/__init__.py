"""Exact combinatorics of glued monomial modules, towers and floor plans."""

from .descent import certify, minimize
from .floorplan import CompatibleFloorPlan, FloorPlan, max_score_table, realize, realize_compatible
from .gluing import GluingDatum, algebra_dimension, gerstenhaber_check, validate_gluing
from .lattice import HeightMap, MonomialIdeal, YoungDiagram
from .towers import CompatibleTower, Tower

__all__ = [
    "CompatibleFloorPlan",
    "CompatibleTower",
    "FloorPlan",
    "GluingDatum",
    "HeightMap",
    "MonomialIdeal",
    "Tower",
    "YoungDiagram",
    "algebra_dimension",
    "certify",
    "gerstenhaber_check",
    "max_score_table",
    "minimize",
    "realize",
    "realize_compatible",
    "validate_gluing",
]
