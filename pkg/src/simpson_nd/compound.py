"""Compound rules by subdivision, and empirical convergence orders.

A base rule over the unit interval, the unit square, or the standard
triangle is mapped affinely onto every cell of a uniform subdivision and
the per-cell estimates are summed.  Cell order is fixed (row-major grids,
depth-first triangle recursion) and the float accumulation is compensated,
so results are reproducible bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from . import scalars
from .errors import DegenerateErrors, SingularMap, UnsupportedRegion
from .regions import Cube, Point, Polygon, Simplex
from .rules import CubatureRule
from .scalars import Scalar, to_float

RationalMatrix = tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class CompoundEstimate:
    level: int
    cells: int
    estimate: float


def _det2(m: RationalMatrix) -> Fraction:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def _is_identity(matrix, offset) -> bool:
    n = len(matrix)
    for i in range(n):
        for j in range(n):
            if matrix[i][j] != (1 if i == j else 0):
                return False
    return all(o == 0 for o in offset)


def _map_point(matrix, offset, point: Point) -> Point:
    out = []
    for i in range(len(matrix)):
        acc: Scalar = Fraction(offset[i])
        for j, c in enumerate(point):
            acc = scalars.add(acc, scalars.mul(Fraction(matrix[i][j]), c))
        out.append(acc)
    return tuple(out)


def map_rule(rule: CubatureRule, matrix, offset) -> CubatureRule:
    """Push a rule through an affine map with rational entries.

    Nodes map through x -> M x + o and weights scale by |det M|, which
    preserves the exactness degree on the image region.  Supported images:
    any affine image of a 2-d region with straight edges (returned as a
    Polygon).  The identity map is accepted for every region.
    """
    matrix = tuple(tuple(Fraction(v) for v in row) for row in matrix)
    offset = tuple(Fraction(v) for v in offset)
    dim = rule.region.dimension
    if len(matrix) != dim or any(len(row) != dim for row in matrix) or len(offset) != dim:
        raise ValueError("affine map shape does not match the region dimension")
    if _is_identity(matrix, offset):
        return rule
    if dim != 2:
        raise UnsupportedRegion("only 2-d regions can be mapped off the identity")
    det = _det2(matrix)
    if det == 0:
        raise SingularMap("affine map has zero determinant")
    region = rule.region
    if isinstance(region, (Simplex, Cube)):
        corners = region.vertices()
    elif isinstance(region, Polygon):
        corners = region.vertices()
    else:
        raise UnsupportedRegion("the disc has no affine polygon image")
    if isinstance(region, Cube):
        # vertex order from itertools.product traces a Z, not the border
        corners = (corners[0], corners[1], corners[3], corners[2])
    image = Polygon([_map_point(matrix, offset, p) for p in corners])
    scale = Fraction(abs(det))
    nodes = tuple(_map_point(matrix, offset, p) for p in rule.nodes)
    weights = tuple(scalars.mul(scale, w) for w in rule.weights)
    label = f"{rule.label}|mapped" if rule.label else "mapped"
    return CubatureRule(image, nodes, weights, label=label)


def triangle_children(v0, v1, v2):
    """The four midpoint-subdivision children of a triangle, exact."""

    def mid(p, q):
        return tuple(
            scalars.div(scalars.add(a, b), Fraction(2)) for a, b in zip(p, q)
        )

    m01 = mid(v0, v1)
    m02 = mid(v0, v2)
    m12 = mid(v1, v2)
    return (
        (v0, m01, m02),
        (m01, v1, m12),
        (m02, m12, v2),
        (m01, m12, m02),
    )


def _triangle_cells(level: int):
    """Depth-first list of (v0, v1, v2) triangles at one subdivision level."""
    zero, one = Fraction(0), Fraction(1)
    start = ((zero, zero), (one, zero), (zero, one))
    cells = [start]
    for _ in range(level):
        cells = [child for cell in cells for child in triangle_children(*cell)]
    return cells


def _supported_kind(rule: CubatureRule) -> str:
    region = rule.region
    if isinstance(region, Cube) and region.dimension == 2:
        return "square"
    if isinstance(region, (Cube, Simplex)) and region.dimension == 1:
        return "interval"
    if isinstance(region, Simplex) and region.dimension == 2:
        return "triangle"
    raise UnsupportedRegion(
        "compounding supports the unit interval, the unit square, "
        "and the standard triangle"
    )


def compound_apply(
    rule: CubatureRule, level: int, f: Callable[..., float]
) -> CompoundEstimate:
    """Subdivide the rule's region 2^level times per axis (triangles: level
    rounds of 4-way midpoint subdivision), apply the mapped rule on every
    cell, and sum in cell order with compensated accumulation."""
    if level < 0:
        raise ValueError("level must be >= 0")
    kind = _supported_kind(rule)
    base_nodes = [tuple(to_float(c) for c in p) for p in rule.nodes]
    base_weights = [to_float(w) for w in rule.weights]

    contributions: list[float] = []
    if kind == "interval":
        k = 2**level
        h = 1.0 / k
        for i in range(k):
            x0 = i * h
            cell = 0.0
            for (nx,), w in zip(base_nodes, base_weights):
                cell += w * f(x0 + nx * h)
            contributions.append(cell * h)
        cells = k
    elif kind == "square":
        k = 2**level
        h = 1.0 / k
        for j in range(k):
            for i in range(k):
                x0, y0 = i * h, j * h
                cell = 0.0
                for (nx, ny), w in zip(base_nodes, base_weights):
                    cell += w * f(x0 + nx * h, y0 + ny * h)
                contributions.append(cell * h * h)
        cells = k * k
    else:
        tris = _triangle_cells(level)
        for v0, v1, v2 in tris:
            p0 = (to_float(v0[0]), to_float(v0[1]))
            e1 = (to_float(v1[0]) - p0[0], to_float(v1[1]) - p0[1])
            e2 = (to_float(v2[0]) - p0[0], to_float(v2[1]) - p0[1])
            # |det| of the standard-triangle-to-cell map; scales the weights
            scale = abs(e1[0] * e2[1] - e1[1] * e2[0])
            cell = 0.0
            for (nx, ny), w in zip(base_nodes, base_weights):
                x = p0[0] + nx * e1[0] + ny * e2[0]
                y = p0[1] + nx * e1[1] + ny * e2[1]
                cell += w * f(x, y)
            contributions.append(cell * scale)
        cells = len(tris)

    total = 0.0
    carry = 0.0
    for value in contributions:
        y = value - carry
        t = total + y
        carry = (t - total) - y
        total = t
    return CompoundEstimate(level=level, cells=cells, estimate=total)


def convergence_order(
    estimates: Sequence[CompoundEstimate], reference: float
) -> float:
    """Least-squares slope of log|error| against log(h), h = 2^-level.

    Requires at least three levels with nonzero, strictly decreasing
    errors; anything else raises DegenerateErrors rather than returning a
    misleading fit.
    """
    if len(estimates) < 3:
        raise DegenerateErrors("need at least three levels to fit an order")
    errors = [abs(e.estimate - reference) for e in estimates]
    for err in errors:
        if err == 0.0:
            raise DegenerateErrors("zero error: the rule is exact at this level")
    for prev, cur in zip(errors, errors[1:]):
        if cur >= prev:
            raise DegenerateErrors("errors are not strictly decreasing")
    xs = [-e.level * math.log(2.0) for e in estimates]
    ys = [math.log(err) for err in errors]
    n = len(xs)
    mean_x = sum(xs) / n
    mean_y = sum(ys) / n
    num = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    den = sum((x - mean_x) ** 2 for x in xs)
    return num / den
