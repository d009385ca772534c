import math
from fractions import Fraction

import pytest

from simpson_nd import scalars
from simpson_nd.compound import (
    CompoundEstimate,
    compound_apply,
    convergence_order,
    map_rule,
    triangle_children,
)
from simpson_nd.errors import DegenerateErrors, SingularMap, UnsupportedRegion
from simpson_nd.exactness import exactness_degree, monomials_up_to
from simpson_nd.regions import Polygon
from simpson_nd.rules import cr1, cr3, cr4, cr6, triangle_midedge

E = math.e
HALF = Fraction(1, 2)
IDENTITY = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))


def test_map_rule_identity():
    rule = cr4()
    assert map_rule(rule, IDENTITY, (0, 0)) is rule
    disc_rule = cr6()
    assert map_rule(disc_rule, IDENTITY, (0, 0)) is disc_rule


def test_map_rule_quarter_square():
    scaled = map_rule(cr4(), ((HALF, 0), (0, HALF)), (0, 0))
    assert scaled.weight_sum() == Fraction(1, 4)
    assert isinstance(scaled.region, Polygon)
    assert scaled.region.volume() == Fraction(1, 4)


def test_map_rule_preserves_exactness_degree():
    mapped = map_rule(triangle_midedge(), ((HALF, 0), (0, HALF)), (0, 0))
    report = exactness_degree(mapped, 3)
    assert report.certified_degree == 2
    shifted = map_rule(cr4(), ((Fraction(1, 3), 0), (0, Fraction(1, 5))), (2, 3))
    assert exactness_degree(shifted, 4).certified_degree == 3


def test_map_rule_singular():
    with pytest.raises(SingularMap):
        map_rule(cr4(), ((Fraction(1), Fraction(1)), (Fraction(1), Fraction(1))), (0, 0))


def test_map_rule_unsupported():
    with pytest.raises(UnsupportedRegion):
        map_rule(cr6(), ((HALF, 0), (0, HALF)), (0, 0))
    with pytest.raises(UnsupportedRegion):
        map_rule(cr3(1), ((HALF,),), (HALF,))


def test_triangle_children_cover_parent_exactly():
    v = ((Fraction(0), Fraction(0)), (Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))
    children = triangle_children(*v)
    assert len(children) == 4

    def doubled_area(t):
        (x0, y0), (x1, y1), (x2, y2) = t
        return abs((x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0))

    total = sum(doubled_area(t) for t in children)
    assert total == doubled_area(v)
    assert {doubled_area(t) for t in children} == {Fraction(1, 4)}


def test_compound_level_zero_weight_sum():
    est = compound_apply(cr4(), 0, lambda x, y: 1.0)
    assert est.cells == 1
    assert est.estimate == pytest.approx(1.0, abs=1e-15)


def test_compound_cell_counts():
    assert compound_apply(cr4(), 3, lambda x, y: 0.0).cells == 64
    assert compound_apply(triangle_midedge(), 2, lambda x, y: 0.0).cells == 16
    assert compound_apply(cr3(1), 4, lambda x: 0.0).cells == 16


def test_compound_square_exp():
    est = compound_apply(cr4(), 3, lambda x, y: math.exp(x + y))
    assert abs(est.estimate - (E - 1.0) ** 2) < 1e-6


def test_compound_triangle_quadratic_exact_at_every_level():
    exact = 1.0 / 12.0
    for level in range(0, 4):
        est = compound_apply(triangle_midedge(), level, lambda x, y: x * x)
        assert abs(est.estimate - exact) <= 1e-12 * exact


def test_compound_inherits_exactness():
    # a degree-3 exact rule stays exact for all cubics on every level
    for alpha in monomials_up_to(2, 3):
        exact = scalars.to_float(Fraction(1, (alpha[0] + 1) * (alpha[1] + 1)))
        for level in (1, 2):
            est = compound_apply(
                cr4(), level, lambda x, y, a=alpha: x ** a[0] * y ** a[1]
            )
            assert abs(est.estimate - exact) <= 1e-12 * max(exact, 1.0)


def test_compound_weight_sums_match_region_volume():
    for rule, volume in [
        (cr4(), 1.0),
        (triangle_midedge(), 0.5),
        (cr1(2), 0.5),
        (cr3(1), 1.0),
    ]:
        for level in (1, 3, 6):
            arity = rule.region.dimension
            one = (lambda x: 1.0) if arity == 1 else (lambda x, y: 1.0)
            est = compound_apply(rule, level, one)
            assert abs(est.estimate - volume) <= 1e-12 * volume


def test_compound_unsupported_region():
    with pytest.raises(UnsupportedRegion):
        compound_apply(cr6(), 1, lambda x, y: 1.0)
    with pytest.raises(UnsupportedRegion):
        compound_apply(cr3(3), 1, lambda x, y, z: 1.0)


def test_convergence_order_cr4():
    ests = [compound_apply(cr4(), lv, lambda x, y: math.exp(x + y)) for lv in range(1, 6)]
    order = convergence_order(ests, (E - 1.0) ** 2)
    assert abs(order - 4.0) <= 0.3


def test_convergence_order_midedge():
    ests = [
        compound_apply(triangle_midedge(), lv, lambda x, y: math.exp(x + y))
        for lv in range(1, 6)
    ]
    order = convergence_order(ests, 1.0)
    assert order >= 3.0 - 0.3


def test_convergence_order_simpson_1d():
    ests = [compound_apply(cr3(1), lv, math.exp) for lv in range(1, 6)]
    order = convergence_order(ests, E - 1.0)
    assert abs(order - 4.0) <= 0.3


def test_convergence_order_cr1_triangle():
    # degree-2 exact rule: at least third order on a smooth integrand
    ests = [
        compound_apply(cr1(2), lv, lambda x, y: math.exp(x + y)) for lv in range(1, 6)
    ]
    order = convergence_order(ests, 1.0)
    assert order >= 2.7


def test_convergence_order_degenerate():
    with pytest.raises(DegenerateErrors):
        convergence_order(
            [CompoundEstimate(1, 4, 1.0), CompoundEstimate(2, 16, 1.0)], 0.0
        )
    flat = [
        CompoundEstimate(1, 4, 2.0),
        CompoundEstimate(2, 16, 2.0),
        CompoundEstimate(3, 64, 2.0),
    ]
    with pytest.raises(DegenerateErrors):
        convergence_order(flat, 1.0)
    with pytest.raises(DegenerateErrors):
        # exact estimates: zero error must be reported, not fitted
        ests = [compound_apply(cr4(), lv, lambda x, y: 1.0) for lv in (1, 2, 3)]
        convergence_order(ests, 1.0)


def test_compound_determinism():
    f = lambda x, y: math.sin(3.0 * x) * math.cos(2.0 * y) + x
    a = compound_apply(cr4(), 4, f).estimate
    b = compound_apply(cr4(), 4, f).estimate
    assert a == b


def test_map_rule_composes():
    # map a mapped rule again: quarter-triangle then a translation
    quarter = map_rule(triangle_midedge(), ((HALF, 0), (0, HALF)), (0, 0))
    moved = map_rule(quarter, IDENTITY, (Fraction(2), Fraction(3)))
    assert moved.weight_sum() == Fraction(1, 8)
    assert exactness_degree(moved, 3).certified_degree == 2
