"""Exact integer/rational linear algebra and polyhedral primitives."""

from fractions import Fraction

from .matrix import (
    Rational,
    det,
    dot,
    hermite_normal_form,
    identity,
    integer_kernel,
    inverse,
    is_primitive,
    matmul,
    primitive,
    rank,
    smith_normal_form,
    solve,
    transpose,
)
from .polyhedra import (
    LatticePoint,
    cone_facets,
    convex_hull_2d,
    dual_cone,
    lattice_points_in_polytope,
    polytope_inequalities,
    pulling_triangulation,
    span_coordinates,
)
from .simplex import Constraint, LinearProgram, LPResult, Status, cone_contains, lp_solve

__all__ = [
    "Fraction", "Rational", "det", "dot", "hermite_normal_form", "identity",
    "integer_kernel", "inverse", "is_primitive", "matmul", "primitive", "rank",
    "smith_normal_form", "solve", "transpose", "LatticePoint", "cone_facets",
    "convex_hull_2d", "dual_cone", "lattice_points_in_polytope",
    "polytope_inequalities", "pulling_triangulation", "span_coordinates",
    "Constraint", "LinearProgram", "LPResult", "Status", "cone_contains", "lp_solve",
]
