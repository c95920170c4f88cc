"""Invariants of central hyperplane arrangements: posets, Orlik-Solomon
algebras, resonance, pencils and lower central series ranks."""

from .arrangement import (
    AbstractMatroid,
    Arrangement,
    ArrangementError,
    IntersectionPoset,
    build_poset,
    characteristic_polynomial,
    count_regions,
    supersolvable,
)
from .catalog import braid, catalog, ceva, cube_symmetry, generic, graphic, hessian
from .orlik_solomon import OSAlgebra, build_os, multiply

__all__ = [
    "AbstractMatroid",
    "Arrangement",
    "ArrangementError",
    "IntersectionPoset",
    "OSAlgebra",
    "braid",
    "build_os",
    "build_poset",
    "catalog",
    "ceva",
    "characteristic_polynomial",
    "count_regions",
    "cube_symmetry",
    "generic",
    "graphic",
    "hessian",
    "multiply",
    "supersolvable",
]
