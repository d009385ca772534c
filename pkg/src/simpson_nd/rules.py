"""Cubature rules: weighted node sets over a region, plus the catalog of
named rules CR1..CR6 and the triangle midedge rule.

Every rule stores exact Scalar nodes and weights.  Node membership in the
closed region is verified exactly at construction, so rules with
irrational boundary nodes (CR5) are certified, not assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

from . import scalars
from .errors import (
    DimensionMismatch,
    NodeNotOnBoundary,
    NodeOutsideRegion,
    RegionMismatch,
)
from .regions import (
    Cube,
    MultiIndex,
    Point,
    Region,
    Simplex,
    UnitDisc,
    region_from_json,
    region_to_json,
    trapezoid_paper,
)
from .scalars import Scalar, as_scalar, is_zero, quad, to_float


class MonomialPoly:
    """Sparse multivariate polynomial: multi-index -> rational coefficient.

    Zero coefficients are never stored.  Instances are treated as
    immutable; the arithmetic helpers return new values.
    """

    __slots__ = ("dimension", "terms")

    def __init__(self, dimension: int, terms: Mapping[MultiIndex, Fraction] | None = None):
        if dimension < 1:
            raise ValueError("polynomial dimension must be >= 1")
        clean: dict[MultiIndex, Fraction] = {}
        for alpha, coeff in (terms or {}).items():
            alpha = tuple(int(e) for e in alpha)
            if len(alpha) != dimension:
                raise DimensionMismatch(
                    f"term {alpha} does not have dimension {dimension}"
                )
            if any(e < 0 for e in alpha):
                raise ValueError(f"negative exponent in {alpha}")
            coeff = Fraction(coeff)
            if coeff != 0:
                clean[alpha] = coeff
        object.__setattr__(self, "dimension", dimension)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MonomialPoly values are immutable")

    def __eq__(self, other):
        return (
            isinstance(other, MonomialPoly)
            and self.dimension == other.dimension
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.dimension, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        return f"MonomialPoly({self.dimension}, {self.terms!r})"

    def degree(self) -> int:
        return max((sum(a) for a in self.terms), default=0)

    def evaluate(self, point: Point) -> Scalar:
        if len(point) != self.dimension:
            raise DimensionMismatch(
                f"point has {len(point)} coordinates, polynomial dimension is {self.dimension}"
            )
        point = tuple(as_scalar(c) for c in point)
        total: Scalar = Fraction(0)
        for alpha, coeff in self.terms.items():
            term: Scalar = Fraction(coeff)
            for c, e in zip(point, alpha):
                if e:
                    term = scalars.mul(term, scalars.pow_scalar(c, e))
            total = scalars.add(total, term)
        return total

    def evaluate_float(self, point) -> float:
        total = 0.0
        for alpha, coeff in self.terms.items():
            term = coeff.numerator / coeff.denominator
            for c, e in zip(point, alpha):
                term *= c**e
            total += term
        return total

    def __add__(self, other: "MonomialPoly") -> "MonomialPoly":
        if self.dimension != other.dimension:
            raise DimensionMismatch("cannot add polynomials of different dimension")
        terms = dict(self.terms)
        for alpha, coeff in other.terms.items():
            terms[alpha] = terms.get(alpha, Fraction(0)) + coeff
        return MonomialPoly(self.dimension, terms)

    def __neg__(self) -> "MonomialPoly":
        return MonomialPoly(self.dimension, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other: "MonomialPoly") -> "MonomialPoly":
        return self + (-other)

    def __mul__(self, other: "MonomialPoly") -> "MonomialPoly":
        if self.dimension != other.dimension:
            raise DimensionMismatch("cannot multiply polynomials of different dimension")
        terms: dict[MultiIndex, Fraction] = {}
        for a1, c1 in self.terms.items():
            for a2, c2 in other.terms.items():
                key = tuple(x + y for x, y in zip(a1, a2))
                terms[key] = terms.get(key, Fraction(0)) + c1 * c2
        return MonomialPoly(self.dimension, terms)

    def scale(self, factor) -> "MonomialPoly":
        factor = Fraction(factor)
        return MonomialPoly(
            self.dimension, {a: c * factor for a, c in self.terms.items()}
        )

    def __pow__(self, k: int) -> "MonomialPoly":
        if k < 0:
            raise ValueError("exponent must be non-negative")
        result = MonomialPoly(self.dimension, {(0,) * self.dimension: Fraction(1)})
        for _ in range(k):
            result = result * self
        return result


def monomial(alpha, coefficient=1) -> MonomialPoly:
    """Single-term polynomial x^alpha times an optional rational coefficient."""
    alpha = tuple(int(e) for e in alpha)
    return MonomialPoly(len(alpha), {alpha: Fraction(coefficient)})


@dataclass(frozen=True)
class CubatureRule:
    """Finite node/weight list over a region, all entries exact."""

    region: Region
    nodes: tuple[Point, ...]
    weights: tuple[Scalar, ...]
    label: str = ""

    def __post_init__(self):
        nodes = tuple(tuple(as_scalar(c) for c in p) for p in self.nodes)
        weights = tuple(as_scalar(w) for w in self.weights)
        if len(nodes) == 0 or len(nodes) != len(weights):
            raise ValueError("rule needs equally many nodes and weights, at least one")
        dim = self.region.dimension
        for p in nodes:
            if len(p) != dim:
                raise DimensionMismatch(
                    f"node {p} does not match region dimension {dim}"
                )
            if not self.region.contains(p):
                raise NodeOutsideRegion(f"node {p} lies outside the region")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    def weight_sum(self) -> Scalar:
        total: Scalar = Fraction(0)
        for w in self.weights:
            total = scalars.add(total, w)
        return total

    def apply_poly(self, poly: MonomialPoly) -> Scalar:
        """Exact weighted sum of polynomial values at the nodes."""
        if poly.dimension != self.region.dimension:
            raise DimensionMismatch(
                f"polynomial dimension {poly.dimension} does not match region"
            )
        total: Scalar = Fraction(0)
        for node, w in zip(self.nodes, self.weights):
            total = scalars.add(total, scalars.mul(w, poly.evaluate(node)))
        return total

    def apply_fn(self, f: Callable[..., float]) -> float:
        """Floating-point application, summed in node-index order."""
        total = 0.0
        for node, w in zip(self.nodes, self.weights):
            total += to_float(w) * f(*[to_float(c) for c in node])
        return total


def midpoint_rule(region: Region) -> CubatureRule:
    """Single node at the center of mass, weighted by the region volume."""
    return CubatureRule(
        region, (region.centroid(),), (region.volume(),), label="midpoint"
    )


def vertex_rule(region: Region) -> CubatureRule:
    """Equal weights volume/(vertex count) at the region vertices."""
    verts = region.vertices()
    w = scalars.div(region.volume(), Fraction(len(verts)))
    return CubatureRule(region, verts, tuple(w for _ in verts), label="vertex")


def boundary_rule(region: Region, nodes) -> CubatureRule:
    """Equal weights volume/(node count) at caller-chosen boundary nodes."""
    nodes = tuple(tuple(as_scalar(c) for c in p) for p in nodes)
    for p in nodes:
        if not region.on_boundary(p):
            raise NodeNotOnBoundary(f"node {p} is not on the region boundary")
    w = scalars.div(region.volume(), Fraction(len(nodes)))
    return CubatureRule(region, nodes, tuple(w for _ in nodes), label="boundary")


def blend(lam, a: CubatureRule, b: CubatureRule, label: str = "") -> CubatureRule:
    """Affine mix: lam times rule ``a`` plus (1 - lam) times rule ``b``.

    Nodes whose scaled weight is exactly zero are dropped, so degenerate
    mixes (lam in {0, 1}) reduce to the surviving rule's node set.
    """
    lam = Fraction(lam)
    if a.region != b.region:
        raise RegionMismatch("blended rules must share one region")
    nodes: list[Point] = []
    weights: list[Scalar] = []
    for node, w in zip(a.nodes, a.weights):
        scaled = scalars.mul(lam, w)
        if not is_zero(scaled):
            nodes.append(node)
            weights.append(scaled)
    for node, w in zip(b.nodes, b.weights):
        scaled = scalars.mul(1 - lam, w)
        if not is_zero(scaled):
            nodes.append(node)
            weights.append(scaled)
    return CubatureRule(a.region, tuple(nodes), tuple(weights), label=label)


def cr1(n: int) -> CubatureRule:
    """Center-plus-vertices blend on the n-simplex, blend parameter
    (n+1)/(n+2); exact for every quadratic."""
    region = Simplex(n)
    lam = Fraction(n + 1, n + 2)
    return blend(lam, midpoint_rule(region), vertex_rule(region), label=f"CR1({n})")


def _face_centers(n: int) -> tuple[Point, ...]:
    pts = []
    for k in range(n):
        pts.append(
            tuple(Fraction(0) if i == k else Fraction(1, n) for i in range(n))
        )
    pts.append(tuple(Fraction(1, n) for _ in range(n)))
    return tuple(pts)


def cr2(n: int) -> CubatureRule:
    """Center-plus-face-centers blend on the n-simplex, blend parameter
    -(n-2)(n+1)/(n+2); exact for every quadratic.  The center weight is
    negative for n >= 3 and zero for n = 2."""
    region = Simplex(n)
    lam = Fraction(-(n - 2) * (n + 1), n + 2)
    faces = boundary_rule(region, _face_centers(n))
    return blend(lam, midpoint_rule(region), faces, label=f"CR2({n})")


def cr3(n: int) -> CubatureRule:
    """Center-plus-vertices blend on the n-cube with blend parameter 2/3;
    exact for every cubic.  For n = 1 this is classical Simpson's rule."""
    region = Cube(n)
    return blend(
        Fraction(2, 3), midpoint_rule(region), vertex_rule(region), label=f"CR3({n})"
    )


def _square_midedges() -> tuple[Point, ...]:
    h = Fraction(1, 2)
    return ((h, Fraction(0)), (Fraction(0), h), (h, Fraction(1)), (Fraction(1), h))


def cr4() -> CubatureRule:
    """Center-plus-edge-midpoints blend on the unit square, blend parameter
    1/3; exact for every cubic and additionally for x^3 y and x y^3."""
    region = Cube(2)
    mids = boundary_rule(region, _square_midedges())
    return blend(Fraction(1, 3), midpoint_rule(region), mids, label="CR4")


def _cr5_boundary_nodes(conjugate: bool) -> tuple[Point, ...]:
    s = -1 if conjugate else 1
    d = quad(Fraction(11, 18), s * Fraction(1, 458), 3893)
    a = quad(Fraction(11, 18), -s * Fraction(1, 458), 3893)
    b = quad(Fraction(1, 2), s * Fraction(11, 4122), 3893)
    c = quad(Fraction(1), -s * Fraction(10, 2061), 3893)
    return (
        (a, Fraction(0)),
        (Fraction(1), c),
        (Fraction(0), b),
        (d, scalars.add(d, Fraction(1))),
    )


def _cr5(conjugate: bool, label: str) -> CubatureRule:
    region = trapezoid_paper()
    lam = Fraction(163, 392)
    bnd = boundary_rule(region, _cr5_boundary_nodes(conjugate))
    return blend(lam, midpoint_rule(region), bnd, label=label)


def cr5() -> CubatureRule:
    """Degree-2 rule on the trapezoid (0,0),(1,0),(1,2),(0,1): center of
    mass blended with four boundary nodes whose coordinates live in
    Q(sqrt(3893)), blend parameter 163/392."""
    return _cr5(conjugate=False, label="CR5")


def cr5_conjugate() -> CubatureRule:
    """The companion CR5 solution with sqrt(3893) replaced by its negative."""
    return _cr5(conjugate=True, label="CR5*")


def cr6() -> CubatureRule:
    """Unit-disc rule pi/2 f(0,0) + pi/8 (f(1,0)+f(0,1)+f(-1,0)+f(0,-1));
    exact for every cubic."""
    region = UnitDisc()
    one = Fraction(1)
    zero = Fraction(0)
    circle = boundary_rule(
        region, ((one, zero), (zero, one), (-one, zero), (zero, -one))
    )
    return blend(Fraction(1, 2), midpoint_rule(region), circle, label="CR6")


def triangle_midedge() -> CubatureRule:
    """Weights 1/6 at the three edge midpoints of the standard triangle;
    exact for every quadratic."""
    region = Simplex(2)
    h = Fraction(1, 2)
    zero = Fraction(0)
    rule = boundary_rule(region, ((h, zero), (zero, h), (h, h)))
    return CubatureRule(region, rule.nodes, rule.weights, label="TriangleMidedge")


_NAMED_NEED_DIM = {"CR1": cr1, "CR2": cr2, "CR3": cr3}
_NAMED_FIXED = {
    "CR4": cr4,
    "CR5": cr5,
    "CR5*": cr5_conjugate,
    "CR6": cr6,
    "TRIANGLEMIDEDGE": triangle_midedge,
}


def named_rule(name: str, dim: int | None = None) -> CubatureRule:
    """Look up a rule by catalog name; CR1..CR3 need a dimension."""
    key = name.strip().upper()
    if key in _NAMED_NEED_DIM:
        if dim is None:
            raise ValueError(f"rule {name} needs a dimension")
        return _NAMED_NEED_DIM[key](dim)
    if key in _NAMED_FIXED:
        return _NAMED_FIXED[key]()
    raise ValueError(f"unknown rule name: {name}")


def _sort_key(rule: CubatureRule):
    import json as _json

    def skey(x):
        return (to_float(x), _json.dumps(scalars.scalar_to_json(x), sort_keys=True))

    return sorted(
        (tuple(skey(c) for c in node), skey(w))
        for node, w in zip(rule.nodes, rule.weights)
    )


def rules_equivalent(a: CubatureRule, b: CubatureRule) -> bool:
    """Same region and same node/weight multiset, exactly."""
    return a.region == b.region and _sort_key(a) == _sort_key(b)


def rule_to_json(rule: CubatureRule) -> dict:
    return {
        "label": rule.label,
        "region": region_to_json(rule.region),
        "nodes": [
            [scalars.scalar_to_json(c) for c in node] for node in rule.nodes
        ],
        "weights": [scalars.scalar_to_json(w) for w in rule.weights],
    }


def rule_from_json(obj) -> CubatureRule:
    region = region_from_json(obj["region"])
    nodes = tuple(
        tuple(scalars.scalar_from_json(c) for c in node) for node in obj["nodes"]
    )
    weights = tuple(scalars.scalar_from_json(w) for w in obj["weights"])
    return CubatureRule(region, nodes, weights, label=obj.get("label", ""))
