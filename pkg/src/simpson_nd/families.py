"""Parameterized boundary-node systems and their published solution
families, verified by exact substitution.

Each system is a residual evaluator: plug in node parameters and a blend
parameter, get back the exact amount by which each target equation
misses.  A parameter point solves the system exactly when every residual
is zero.  The solution families reduce each system to one free parameter;
the reductions are checked by substitution here, never re-derived with a
computer algebra system.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import scalars
from .errors import DenominatorZero, SingularInterpolation
from .regions import Cube, Region, Simplex
from .rules import CubatureRule, blend, boundary_rule, midpoint_rule, monomial
from .scalars import Scalar, as_scalar, is_zero, quad


@dataclass(frozen=True)
class SystemResiduals:
    """Named residuals of one polynomial system at one parameter point."""

    names: tuple[str, ...]
    residuals: tuple[Scalar, ...]

    @property
    def all_zero(self) -> bool:
        return all(is_zero(r) for r in self.residuals)

    def as_dict(self) -> dict[str, Scalar]:
        return dict(zip(self.names, self.residuals))


def _mix(lam, center_value, node_values, node_weight, integral) -> Scalar:
    """lam*center + (1-lam)*node_weight*sum(node_values) - integral."""
    lam = as_scalar(lam)
    total: Scalar = Fraction(0)
    for v in node_values:
        total = scalars.add(total, v)
    blended = scalars.add(
        scalars.mul(lam, center_value),
        scalars.mul(scalars.sub(Fraction(1), lam), scalars.mul(node_weight, total)),
    )
    return scalars.sub(blended, integral)


def triangle_system(a, b, c, lam) -> SystemResiduals:
    """Residuals for x, y, x^2, y^2, xy of the standard-triangle blend with
    boundary nodes (a,0), (0,b), (c,1-c).

    The center term is area * f(1/3,1/3) = 1/2 f(1/3,1/3) and the node
    term is 1/6 (f(a,0)+f(0,b)+f(c,1-c)).
    """
    a, b, c, lam = (as_scalar(v) for v in (a, b, c, lam))
    one = Fraction(1)
    cc = scalars.sub(one, c)
    w = Fraction(1, 6)

    def pw(v, k):
        return scalars.pow_scalar(v, k)

    sixth = Fraction(1, 6)
    eighteenth = Fraction(1, 18)
    rows = (
        ("x", sixth, [a, c], Fraction(1, 6)),
        ("y", sixth, [b, cc], Fraction(1, 6)),
        ("x^2", eighteenth, [pw(a, 2), pw(c, 2)], Fraction(1, 12)),
        ("y^2", eighteenth, [pw(b, 2), pw(cc, 2)], Fraction(1, 12)),
        ("xy", eighteenth, [scalars.mul(c, cc)], Fraction(1, 24)),
    )
    names = []
    residuals = []
    for name, center, values, integral in rows:
        names.append(name)
        residuals.append(_mix(lam, center, values, w, integral))
    return SystemResiduals(tuple(names), tuple(residuals))


def triangle_family_lambda(c) -> Scalar:
    """Blend parameter of the one-parameter triangle family a = 1-c, b = c.

    Derived from the family's basis polynomial
    12*lam*c^2 - 12*lam*c + 4*lam - (12c^2 - 12c + 3) = 0, which is the
    unique lam making the three-node blend exact on xy.  The denominator
    12c^2 - 12c + 4 has negative discriminant, so the guard below can only
    trip for non-real parameters; it is kept for irrational Scalar input.
    """
    c = as_scalar(c)
    c2 = scalars.pow_scalar(c, 2)
    num = scalars.add(scalars.sub(scalars.mul(Fraction(12), c2), scalars.mul(Fraction(12), c)), Fraction(3))
    den = scalars.add(scalars.sub(scalars.mul(Fraction(12), c2), scalars.mul(Fraction(12), c)), Fraction(4))
    if is_zero(den):
        raise DenominatorZero("triangle family blend parameter pole")
    return scalars.div(num, den)


def triangle_family_member(c) -> tuple[Scalar, Scalar, Scalar, Scalar]:
    """(a, b, c, lam) for the triangle family at parameter c."""
    c = as_scalar(c)
    return (scalars.sub(Fraction(1), c), c, c, triangle_family_lambda(c))


def verify_triangle_family(c) -> tuple[bool, SystemResiduals]:
    """Substitute the triangle family at parameter c and report residuals."""
    a, b, c, lam = triangle_family_member(c)
    res = triangle_system(a, b, c, lam)
    return res.all_zero, res


def triangle_family_rule(c, label: str = "") -> CubatureRule:
    """The family member as an actual rule over the standard triangle."""
    a, b, c, lam = triangle_family_member(c)
    region = Simplex(2)
    nodes = (
        (a, Fraction(0)),
        (Fraction(0), b),
        (c, scalars.sub(Fraction(1), c)),
    )
    return blend(
        Fraction(lam), midpoint_rule(region), boundary_rule(region, nodes), label=label
    )


# Quartic in c singling out the vertex (c=0) and edge-midpoint (c=1/2)
# configurations inside the triangle family, ascending coefficients.
TRIANGLE_SELECTOR = (
    Fraction(0),
    Fraction(0),
    Fraction(6),
    Fraction(-24),
    Fraction(24),
)


def triangle_selector_roots() -> set[Fraction]:
    return rational_roots(TRIANGLE_SELECTOR)


def square_system(a, b, c, d, lam) -> SystemResiduals:
    """Residuals for x, y, x^2, y^2, xy, x^3, y^3, x^2 y, x y^2 of the
    unit-square blend with boundary nodes (a,0), (0,b), (c,1), (1,d).

    The center term is f(1/2,1/2) and the node term is the plain average
    of the four boundary values.
    """
    a, b, c, d, lam = (as_scalar(v) for v in (a, b, c, d, lam))
    one = Fraction(1)
    w = Fraction(1, 4)

    def pw(v, k):
        return scalars.pow_scalar(v, k)

    rows = (
        ("x", Fraction(1, 2), [a, c, one], Fraction(1, 2)),
        ("y", Fraction(1, 2), [b, one, d], Fraction(1, 2)),
        ("x^2", Fraction(1, 4), [pw(a, 2), pw(c, 2), one], Fraction(1, 3)),
        ("y^2", Fraction(1, 4), [pw(b, 2), one, pw(d, 2)], Fraction(1, 3)),
        ("xy", Fraction(1, 4), [c, d], Fraction(1, 4)),
        ("x^3", Fraction(1, 8), [pw(a, 3), pw(c, 3), one], Fraction(1, 4)),
        ("y^3", Fraction(1, 8), [pw(b, 3), one, pw(d, 3)], Fraction(1, 4)),
        ("x^2*y", Fraction(1, 8), [pw(c, 2), d], Fraction(1, 6)),
        ("x*y^2", Fraction(1, 8), [c, pw(d, 2)], Fraction(1, 6)),
    )
    names = []
    residuals = []
    for name, center, values, integral in rows:
        names.append(name)
        residuals.append(_mix(lam, center, values, w, integral))
    return SystemResiduals(tuple(names), tuple(residuals))


def square_family_lambda(d) -> Scalar:
    """Blend parameter (6d^2 - 6d + 2)/(6d^2 - 6d + 3) of the square family.

    The numerator 6d^2 - 6d + 2 has negative discriminant, so no family
    member degenerates to a pure boundary rule (lam is never 0); the
    denominator is 3(2d^2 - 2d + 1), likewise never zero.
    """
    d = as_scalar(d)
    d2 = scalars.pow_scalar(d, 2)
    six_d2_6d = scalars.sub(scalars.mul(Fraction(6), d2), scalars.mul(Fraction(6), d))
    num = scalars.add(six_d2_6d, Fraction(2))
    den = scalars.add(six_d2_6d, Fraction(3))
    if is_zero(den):
        raise DenominatorZero("square family blend parameter pole")
    return scalars.div(num, den)


def square_family_member(d) -> tuple[Scalar, Scalar, Scalar, Scalar, Scalar]:
    """(a, b, c, d, lam) for the square family at parameter d: a = d,
    b = c = 1 - d."""
    d = as_scalar(d)
    comp = scalars.sub(Fraction(1), d)
    return (d, comp, comp, d, square_family_lambda(d))


def verify_square_family(d) -> tuple[bool, SystemResiduals]:
    a, b, c, d, lam = square_family_member(d)
    res = square_system(a, b, c, d, lam)
    return res.all_zero, res


def square_family_rule(d, label: str = "") -> CubatureRule:
    a, b, c, d, lam = square_family_member(d)
    region = Cube(2)
    one = Fraction(1)
    zero = Fraction(0)
    nodes = ((a, zero), (zero, b), (c, one), (one, d))
    return blend(
        Fraction(lam), midpoint_rule(region), boundary_rule(region, nodes), label=label
    )


# Cubic in d whose roots are the square-family members exact for x^3 y
# (and then also x y^3): the vertex cases d = 0, 1 and the midedge d = 1/2.
SQUARE_SELECTOR = (Fraction(0), Fraction(1), Fraction(-3), Fraction(2))


def square_selector_roots() -> set[Fraction]:
    return rational_roots(SQUARE_SELECTOR)


def trapezoid_system(a, b, c, d, lam) -> SystemResiduals:
    """Residuals for x, y, xy, x^2, y^2 of the trapezoid blend with
    boundary nodes (a,0), (0,b), (1,c), (d,d+1) on the trapezoid
    (0,0),(1,0),(1,2),(0,1).

    The center term is 3/2 f(5/9,7/9) and the node weight is 3/8.
    """
    a, b, c, d, lam = (as_scalar(v) for v in (a, b, c, d, lam))
    one = Fraction(1)
    w = Fraction(3, 8)
    d1 = scalars.add(d, one)

    def pw(v, k):
        return scalars.pow_scalar(v, k)

    rows = (
        ("x", Fraction(5, 6), [a, one, d], Fraction(5, 6)),
        ("y", Fraction(7, 6), [c, b, d1], Fraction(7, 6)),
        ("xy", Fraction(35, 54), [c, scalars.mul(d, d1)], Fraction(17, 24)),
        ("x^2", Fraction(25, 54), [pw(a, 2), one, pw(d, 2)], Fraction(7, 12)),
        ("y^2", Fraction(49, 54), [pw(c, 2), pw(b, 2), pw(d1, 2)], Fraction(5, 4)),
    )
    names = []
    residuals = []
    for name, center, values, integral in rows:
        names.append(name)
        residuals.append(_mix(lam, center, values, w, integral))
    return SystemResiduals(tuple(names), tuple(residuals))


def trapezoid_family_member(conjugate: bool = False):
    """(a, b, c, d, lam) solving the trapezoid system over Q(sqrt(3893)).

    The two members come from the conjugate roots
    d = 11/18 +- (1/458) sqrt(3893); the companion parameters follow from
    the linear relations 9a + 9d = 11, 81b - 99d = -20, 81c + 180d = 191,
    and lam = 163/392 either way.
    """
    s = -1 if conjugate else 1
    d = quad(Fraction(11, 18), s * Fraction(1, 458), 3893)
    a = quad(Fraction(11, 18), -s * Fraction(1, 458), 3893)
    b = quad(Fraction(1, 2), s * Fraction(11, 4122), 3893)
    c = quad(Fraction(1), -s * Fraction(10, 2061), 3893)
    return a, b, c, d, Fraction(163, 392)


def simplex3_face_system(a: Sequence, lam) -> SystemResiduals:
    """Residuals of the 3-simplex blend with one node on each face:
    Q1 = (a1,a2,0), Q2 = (a3,0,a4), Q3 = (0,a5,a6), Q4 = (a7,a8,1-a7-a8).

    The three linear residuals are the simplified node-placement
    equations a1+a3+a7 = 1, a2+a5+a8 = 1, a4+a6-a7-a8 = 0 (valid whenever
    lam != 1); the six quadratic residuals keep the blend parameter:
    lam/96 + (1-lam)/24 * S == 1/120 for the mixed terms and 1/60 for the
    squares, where S sums the relevant node products.
    """
    if len(a) != 8:
        raise ValueError("need exactly eight face parameters")
    a1, a2, a3, a4, a5, a6, a7, a8 = (as_scalar(v) for v in a)
    lam = as_scalar(lam)
    one = Fraction(1)
    z4 = scalars.sub(scalars.sub(one, a7), a8)  # third coordinate of Q4

    def pw(v):
        return scalars.pow_scalar(v, 2)

    def lin(total, target) -> Scalar:
        return scalars.sub(total, target)

    def quadratic(s_total, integral) -> Scalar:
        lhs = scalars.add(
            scalars.mul(lam, Fraction(1, 96)),
            scalars.mul(
                scalars.sub(one, lam), scalars.mul(Fraction(1, 24), s_total)
            ),
        )
        return scalars.sub(lhs, integral)

    def total(*vals) -> Scalar:
        acc: Scalar = Fraction(0)
        for v in vals:
            acc = scalars.add(acc, v)
        return acc

    names = ("x", "y", "z", "xy", "xz", "yz", "x^2", "y^2", "z^2")
    residuals = (
        lin(total(a1, a3, a7), one),
        lin(total(a2, a5, a8), one),
        lin(total(a4, a6, scalars.neg(a7), scalars.neg(a8)), Fraction(0)),
        quadratic(total(scalars.mul(a1, a2), scalars.mul(a7, a8)), Fraction(1, 120)),
        quadratic(
            total(scalars.mul(a3, a4), scalars.mul(a7, z4)), Fraction(1, 120)
        ),
        quadratic(
            total(scalars.mul(a5, a6), scalars.mul(a8, z4)), Fraction(1, 120)
        ),
        quadratic(total(pw(a1), pw(a3), pw(a7)), Fraction(1, 60)),
        quadratic(total(pw(a2), pw(a5), pw(a8)), Fraction(1, 60)),
        quadratic(total(pw(a4), pw(a6), pw(z4)), Fraction(1, 60)),
    )
    return SystemResiduals(names, residuals)


def simplex3_face_rule(a: Sequence, lam, label: str = "") -> CubatureRule:
    """Build the actual rule for a face-system parameter point."""
    a1, a2, a3, a4, a5, a6, a7, a8 = (as_scalar(v) for v in a)
    region = Simplex(3)
    zero = Fraction(0)
    z4 = scalars.sub(scalars.sub(Fraction(1), a7), a8)
    nodes = (
        (a1, a2, zero),
        (a3, zero, a4),
        (zero, a5, a6),
        (a7, a8, z4),
    )
    return blend(
        Fraction(lam), midpoint_rule(region), boundary_rule(region, nodes), label=label
    )


def simplex3_vertex_solutions() -> list[tuple[Fraction, ...]]:
    """Search all placements that put each face node at a vertex of its
    face, keeping lam = 4/5, and return the parameter tuples that zero
    the whole system.

    Each solution uses the four simplex vertices exactly once.  Whether
    the system admits any solution with lam = 0 is not settled by this
    package.
    """
    zero, one = Fraction(0), Fraction(1)
    corner = [(zero, zero), (one, zero), (zero, one)]
    lam = Fraction(4, 5)
    solutions = []
    for q1, q2, q3, q4 in itertools.product(corner, repeat=4):
        a = (q1[0], q1[1], q2[0], q2[1], q3[0], q3[1], q4[0], q4[1])
        if simplex3_face_system(a, lam).all_zero:
            solutions.append(a)
    return solutions


def _matrix_at(nodes, basis_exponents) -> tuple[tuple[Scalar, ...], ...]:
    rows = []
    for p in nodes:
        rows.append(
            tuple(monomial(alpha).evaluate(p) for alpha in basis_exponents)
        )
    return tuple(rows)


def exact_det(matrix) -> Scalar:
    """Determinant by exact Gaussian elimination with division."""
    m = [list(row) for row in matrix]
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix must be square")
    det: Scalar = Fraction(1)
    sign = 1
    for col in range(n):
        pivot_row = None
        for r in range(col, n):
            if not is_zero(m[r][col]):
                pivot_row = r
                break
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != col:
            m[col], m[pivot_row] = m[pivot_row], m[col]
            sign = -sign
        piv = m[col][col]
        det = scalars.mul(det, piv)
        for r in range(col + 1, n):
            if is_zero(m[r][col]):
                continue
            f = scalars.div(m[r][col], piv)
            m[r] = [
                scalars.sub(v, scalars.mul(f, w)) for v, w in zip(m[r], m[col])
            ]
    return scalars.mul(Fraction(sign), det)


QUADRATIC_BASIS = ((2, 0), (0, 2), (1, 0), (0, 1), (0, 0))
BILINEAR_BASIS = ((1, 1), (1, 0), (0, 1), (0, 0))


def interp_matrix_quadratic(a, b, c, d):
    """Coefficient matrix of the basis {x^2, y^2, x, y, 1} at the nodes
    (a,0), (0,b), (c,1), (1,d), (1/2,1/2), with its exact determinant."""
    a, b, c, d = (as_scalar(v) for v in (a, b, c, d))
    zero, one, h = Fraction(0), Fraction(1), Fraction(1, 2)
    nodes = ((a, zero), (zero, b), (c, one), (one, d), (h, h))
    matrix = _matrix_at(nodes, QUADRATIC_BASIS)
    return matrix, exact_det(matrix)


def interp_matrix_bilinear(a, b, c, d):
    """Coefficient matrix of the basis {xy, x, y, 1} at the boundary nodes
    (a,0), (0,b), (1,c), (d,1), with its exact determinant.

    Note the third and fourth nodes sit on the right and top edges in
    this order; that is the convention under which the closed-form
    determinant below holds.
    """
    a, b, c, d = (as_scalar(v) for v in (a, b, c, d))
    zero, one = Fraction(0), Fraction(1)
    nodes = ((a, zero), (zero, b), (one, c), (d, one))
    matrix = _matrix_at(nodes, BILINEAR_BASIS)
    return matrix, exact_det(matrix)


def bilinear_det_closed_form(a, b, c, d) -> Scalar:
    """cab - ac - cdb - dab + dac + db, the determinant of the bilinear
    interpolation matrix as a polynomial in the node parameters."""
    a, b, c, d = (as_scalar(v) for v in (a, b, c, d))

    def prod(*vals) -> Scalar:
        acc: Scalar = Fraction(1)
        for v in vals:
            acc = scalars.mul(acc, v)
        return acc

    terms = [
        prod(c, a, b),
        scalars.neg(prod(a, c)),
        scalars.neg(prod(c, d, b)),
        scalars.neg(prod(d, a, b)),
        prod(d, a, c),
        prod(d, b),
    ]
    acc: Scalar = Fraction(0)
    for t in terms:
        acc = scalars.add(acc, t)
    return acc


def solve_linear_system(matrix, rhs) -> tuple[Scalar, ...]:
    """Exact solve of a square system; raises SingularInterpolation when
    the matrix is singular."""
    n = len(matrix)
    rows = [list(row) + [as_scalar(b)] for row, b in zip(matrix, rhs)]
    for col in range(n):
        pivot_row = None
        for r in range(col, n):
            if not is_zero(rows[r][col]):
                pivot_row = r
                break
        if pivot_row is None:
            raise SingularInterpolation("coefficient matrix is singular")
        rows[col], rows[pivot_row] = rows[pivot_row], rows[col]
        piv = rows[col][col]
        rows[col] = [scalars.div(v, piv) for v in rows[col]]
        for r in range(n):
            if r != col and not is_zero(rows[r][col]):
                f = rows[r][col]
                rows[r] = [
                    scalars.sub(v, scalars.mul(f, w))
                    for v, w in zip(rows[r], rows[col])
                ]
    return tuple(rows[r][n] for r in range(n))


def integrate_interpolant(region: Region, basis, nodes, data) -> Scalar:
    """Fit the unique combination of basis monomials through (node, value)
    pairs, then integrate it exactly over the region.

    basis and nodes must have equal length; a singular fit raises
    SingularInterpolation.
    """
    basis = [tuple(int(e) for e in alpha) for alpha in basis]
    nodes = tuple(tuple(as_scalar(c) for c in p) for p in nodes)
    data = tuple(as_scalar(v) for v in data)
    if not (len(basis) == len(nodes) == len(data)):
        raise ValueError("basis, nodes, and data must have equal length")
    matrix = _matrix_at(nodes, basis)
    coeffs = solve_linear_system(matrix, data)
    total: Scalar = Fraction(0)
    for coeff, alpha in zip(coeffs, basis):
        total = scalars.add(total, scalars.mul(coeff, region.moment(alpha)))
    return total


def rational_roots(coefficients: Sequence[Fraction]) -> set[Fraction]:
    """All rational roots of a polynomial given by ascending rational
    coefficients, by the rational root test after clearing denominators."""
    coeffs = [Fraction(c) for c in coefficients]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        raise ValueError("zero polynomial has every root")
    roots: set[Fraction] = set()
    low = 0
    while coeffs[low] == 0:
        low += 1
    if low > 0:
        roots.add(Fraction(0))
        coeffs = coeffs[low:]
    if len(coeffs) == 1:
        return roots
    denom_lcm = 1
    for c in coeffs:
        denom_lcm = denom_lcm * c.denominator // math.gcd(denom_lcm, c.denominator)
    ints = [int(c * denom_lcm) for c in coeffs]

    def divisors(k: int) -> list[int]:
        k = abs(k)
        out = []
        i = 1
        while i * i <= k:
            if k % i == 0:
                out.append(i)
                out.append(k // i)
            i += 1
        return out

    for p in divisors(ints[0]):
        for q in divisors(ints[-1]):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                value = Fraction(0)
                for coeff in reversed(ints):
                    value = value * cand + coeff
                if value == 0:
                    roots.add(cand)
    return roots
