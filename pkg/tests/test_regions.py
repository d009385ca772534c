import math
from fractions import Fraction

import pytest

from oracles import disc_moment_numeric, iterated_cube_moment, iterated_simplex_moment, binomial
from simpson_nd import scalars
from simpson_nd.errors import DimensionMismatch, NoVertices
from simpson_nd.exactness import monomials_up_to
from simpson_nd.regions import (
    Cube,
    Polygon,
    Simplex,
    UnitDisc,
    hexagon_paper,
    region_from_json,
    region_to_json,
    trapezoid_paper,
)
from simpson_nd.scalars import PiMultiple, quad, to_float


def test_volumes():
    assert Simplex(3).volume() == Fraction(1, 6)
    assert Cube(5).volume() == 1
    assert trapezoid_paper().volume() == Fraction(3, 2)
    assert UnitDisc().volume() == PiMultiple(1)
    assert hexagon_paper().volume() == quad(4, 2, 3)


def test_centroids():
    assert Simplex(2).centroid() == (Fraction(1, 3), Fraction(1, 3))
    assert trapezoid_paper().centroid() == (Fraction(5, 9), Fraction(7, 9))
    assert hexagon_paper().centroid() == (0, 0)
    assert Cube(3).centroid() == (Fraction(1, 2),) * 3
    assert UnitDisc().centroid() == (0, 0)


def test_simplex_moment_facts():
    for n in range(1, 7):
        s = Simplex(n)
        for k in range(n):
            unit = tuple(1 if i == k else 0 for i in range(n))
            assert s.moment(unit) == Fraction(1, math.factorial(n + 1))
            two = tuple(2 if i == k else 0 for i in range(n))
            assert s.moment(two) == Fraction(2, math.factorial(n + 2))
        if n >= 2:
            mixed = (1, 1) + (0,) * (n - 2)
            assert s.moment(mixed) == Fraction(1, math.factorial(n + 2))
        if n >= 3:
            triple = (1, 1, 1) + (0,) * (n - 3)
            assert s.moment(triple) == Fraction(1, math.factorial(n + 3))


def test_cube_moment_product():
    assert Cube(4).moment((2, 0, 0, 0)) == Fraction(1, 3)
    assert Cube(2).moment((3, 1)) == Fraction(1, 8)
    assert Cube(3).moment((1, 2, 3)) == Fraction(1, 2) * Fraction(1, 3) * Fraction(1, 4)


def test_hexagon_moments():
    h = hexagon_paper()
    assert h.moment((2, 0)) == quad(Fraction(16, 3), 3, 3)
    assert h.moment((0, 2)) == quad(Fraction(4, 3), Fraction(1, 3), 3)
    for alpha in [(1, 0), (0, 1), (3, 0), (0, 3), (1, 1), (2, 1), (1, 2)]:
        assert scalars.is_zero(h.moment(alpha)), alpha


def test_trapezoid_moments():
    t = trapezoid_paper()
    assert t.moment((1, 0)) == Fraction(5, 6)
    assert t.moment((0, 1)) == Fraction(7, 6)
    assert t.moment((1, 1)) == Fraction(17, 24)
    assert t.moment((2, 0)) == Fraction(7, 12)
    assert t.moment((0, 2)) == Fraction(5, 4)
    assert t.moment((3, 0)) == Fraction(9, 20)


def test_disc_moments():
    d = UnitDisc()
    assert d.moment((4, 0)) == PiMultiple(Fraction(1, 8))
    assert d.moment((0, 4)) == PiMultiple(Fraction(1, 8))
    assert d.moment((2, 0)) == PiMultiple(Fraction(1, 4))
    assert d.moment((2, 2)) == PiMultiple(Fraction(1, 24))
    assert d.moment((3, 1)) == PiMultiple(0)
    # moments keep the pi tag even at zero so disc tables stay uniform
    assert isinstance(d.moment((1, 0)), PiMultiple)


def test_disc_moment_against_polar_quadrature():
    d = UnitDisc()
    for m, n in [(4, 0), (2, 2), (6, 0), (0, 2), (2, 4)]:
        exact = to_float(d.moment((m, n)))
        assert abs(exact - disc_moment_numeric(m, n)) < 1e-10


def test_vertices():
    assert Simplex(2).vertices() == ((0, 0), (1, 0), (0, 1))
    assert Cube(2).vertices() == ((0, 0), (0, 1), (1, 0), (1, 1))
    assert len(Cube(4).vertices()) == 16
    with pytest.raises(NoVertices):
        UnitDisc().vertices()


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        Simplex(2).moment((1, 1, 1))
    with pytest.raises(DimensionMismatch):
        Cube(3).moment((1, 1))


def test_zero_index_moment_is_volume():
    for region in [Simplex(3), Cube(2), trapezoid_paper(), hexagon_paper(), UnitDisc()]:
        zero = (0,) * region.dimension
        assert scalars.eq(region.moment(zero), region.volume())


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_simplex_moments_match_iterated_integration(n):
    s = Simplex(n)
    for alpha in monomials_up_to(n, 4):
        assert s.moment(alpha) == iterated_simplex_moment(n, alpha), alpha


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_cube_moments_match_iterated_integration(n):
    c = Cube(n)
    for alpha in monomials_up_to(n, 4):
        assert c.moment(alpha) == iterated_cube_moment(n, alpha), alpha


def test_polygon_triangle_equals_simplex2():
    tri = Polygon([(0, 0), (1, 0), (0, 1)])
    s2 = Simplex(2)
    for alpha in monomials_up_to(2, 4):
        assert tri.moment(alpha) == s2.moment(alpha), alpha


def test_polygon_translation_covariance():
    base = trapezoid_paper()
    shifted = Polygon([(1, 1), (2, 1), (2, 3), (1, 2)])
    for p, q in monomials_up_to(2, 3):
        expected = Fraction(0)
        for i in range(p + 1):
            for j in range(q + 1):
                expected += binomial(p, i) * binomial(q, j) * base.moment((i, j))
        assert shifted.moment((p, q)) == expected, (p, q)


def test_polygon_orientation_normalized():
    cw = Polygon([(0, 0), (0, 1), (1, 2), (1, 0)])  # clockwise input
    assert cw.volume() == Fraction(3, 2)
    # stored order is the reversal, i.e. counterclockwise
    assert cw.vertices() == ((1, 0), (1, 2), (0, 1), (0, 0))


def test_polygon_rejects_bad_input():
    with pytest.raises(ValueError):
        Polygon([(0, 0), (1, 0)])
    with pytest.raises(ValueError):
        Polygon([(0, 0), (1, 1), (2, 2)])  # collinear, zero area
    # the published vertex listing order self-intersects
    with pytest.raises(ValueError):
        Polygon([(0, 0), (1, 0), (0, 1), (1, 2)])


def test_polygon_membership():
    t = trapezoid_paper()
    assert t.contains((Fraction(1, 2), Fraction(1, 2)))
    assert t.contains((0, 0))
    assert t.on_boundary((Fraction(1, 2), 0))
    assert t.on_boundary((Fraction(1, 2), Fraction(3, 2)))  # on y = x + 1
    assert not t.contains((Fraction(1, 2), Fraction(8, 5)))
    assert not t.contains((2, 0))
    hexagon = hexagon_paper()
    assert hexagon.contains((0, 0))
    assert hexagon.on_boundary((quad(1, 1, 3), 0))
    assert not hexagon.contains((3, 0))


def test_simplex_and_cube_membership():
    s = Simplex(3)
    assert s.contains((Fraction(1, 4), Fraction(1, 4), Fraction(1, 4)))
    assert s.on_boundary((Fraction(1, 2), Fraction(1, 2), 0))
    assert not s.contains((Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)))
    c = Cube(2)
    assert c.on_boundary((Fraction(1, 2), 1))
    assert not c.contains((Fraction(3, 2), 0))


def test_disc_membership_with_quad_coordinates():
    d = UnitDisc()
    inv = quad(0, Fraction(1, 2), 2)  # sqrt(2)/2
    assert d.on_boundary((inv, inv))
    assert d.contains((Fraction(1, 2), Fraction(1, 2)))
    assert not d.contains((1, 1))


def test_region_json_round_trip():
    for region in [Simplex(4), Cube(2), trapezoid_paper(), hexagon_paper(), UnitDisc()]:
        again = region_from_json(region_to_json(region))
        assert again == region


def test_hexagon_moments_against_numeric_oracle():
    from oracles import hexagon_moment_numeric

    h = hexagon_paper()
    for alpha in monomials_up_to(2, 4):
        exact = to_float(h.moment(alpha))
        assert abs(exact - hexagon_moment_numeric(*alpha)) < 1e-9, alpha
