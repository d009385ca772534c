"""Exact-arithmetic cubature rules built from midpoint/vertex blends over
simplices, cubes, planar polygons, and the unit disc, with certified
polynomial exactness degrees."""

from .errors import (
    DegenerateErrors,
    DenominatorZero,
    DimensionMismatch,
    ExprSyntaxError,
    IncompatibleScalars,
    NodeNotOnBoundary,
    NodeOutsideRegion,
    NoVertices,
    NotPolynomial,
    RegionMismatch,
    SimpsonNdError,
    SingularInterpolation,
    SingularMap,
    UnsupportedRegion,
)
from .scalars import (
    PiMultiple,
    Quad,
    Rational,
    Scalar,
    conj,
    eq,
    format_scalar,
    quad,
    scalar_from_json,
    scalar_to_json,
    to_float,
)
from .regions import (
    Cube,
    Polygon,
    Region,
    Simplex,
    UnitDisc,
    hexagon_paper,
    region_from_json,
    region_to_json,
    trapezoid_paper,
)
from .rules import (
    CubatureRule,
    MonomialPoly,
    blend,
    boundary_rule,
    cr1,
    cr2,
    cr3,
    cr4,
    cr5,
    cr5_conjugate,
    cr6,
    midpoint_rule,
    monomial,
    named_rule,
    rule_from_json,
    rule_to_json,
    rules_equivalent,
    triangle_midedge,
    vertex_rule,
)
from .exactness import (
    Equation,
    ExactnessReport,
    Infeasible,
    Underdetermined,
    UniqueSolution,
    exactness_degree,
    monomial_label,
    monomials_of_degree,
    monomials_up_to,
    residual,
    solve_lambda,
    solve_weights,
)
from .families import (
    SystemResiduals,
    bilinear_det_closed_form,
    integrate_interpolant,
    interp_matrix_bilinear,
    interp_matrix_quadratic,
    rational_roots,
    simplex3_face_rule,
    simplex3_face_system,
    simplex3_vertex_solutions,
    square_family_lambda,
    square_family_member,
    square_family_rule,
    square_selector_roots,
    square_system,
    trapezoid_family_member,
    trapezoid_system,
    triangle_family_lambda,
    triangle_family_member,
    triangle_family_rule,
    triangle_selector_roots,
    triangle_system,
    verify_square_family,
    verify_triangle_family,
)
from .compound import (
    CompoundEstimate,
    compound_apply,
    convergence_order,
    map_rule,
    triangle_children,
)
from .expr import (
    Expr,
    as_function,
    eval_float,
    parse,
    to_monomial_poly,
    to_source,
)

__version__ = "0.1.0"
