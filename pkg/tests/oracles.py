"""Independent brute-force oracles used only by the tests.

These deliberately avoid the closed-form moment formulas in the package:
simplex and cube moments come from recursive symbolic iterated
integration over the region inequalities, determinants from the
permutation sum, and disc moments from composite numeric quadrature in
polar coordinates.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from simpson_nd import scalars

Poly = dict[tuple, Fraction]


def _poly_mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for a1, c1 in p.items():
        for a2, c2 in q.items():
            key = tuple(x + y for x, y in zip(a1, a2))
            out[key] = out.get(key, Fraction(0)) + c1 * c2
    return {k: v for k, v in out.items() if v != 0}


def _poly_pow(p: Poly, k: int, nvars: int) -> Poly:
    out: Poly = {(0,) * nvars: Fraction(1)}
    for _ in range(k):
        out = _poly_mul(out, p)
    return out


def iterated_simplex_moment(n: int, alpha) -> Fraction:
    """Integrate x^alpha over x_i >= 0, sum x_i <= 1 by eliminating the
    last variable at each step: its upper limit is 1 minus the sum of the
    remaining ones, and the resulting power expands multinomially."""
    poly: Poly = {tuple(alpha): Fraction(1)}
    for m in range(n, 0, -1):
        reduced: Poly = {}
        for exps, coeff in poly.items():
            last = exps[-1]
            rest = exps[:-1]
            # (1 - x_1 - ... - x_{m-1})^(last+1) / (last+1)
            lin: Poly = {(0,) * (m - 1): Fraction(1)}
            for k in range(m - 1):
                unit = tuple(1 if i == k else 0 for i in range(m - 1))
                lin[unit] = Fraction(-1)
            expanded = _poly_pow(lin, last + 1, m - 1)
            head: Poly = {rest: coeff / (last + 1)}
            for key, value in _poly_mul(head, expanded).items():
                reduced[key] = reduced.get(key, Fraction(0)) + value
        poly = reduced
    return poly.get((), Fraction(0))


def iterated_cube_moment(n: int, alpha) -> Fraction:
    """Integrate x^alpha over [0,1]^n one variable at a time."""
    poly: Poly = {tuple(alpha): Fraction(1)}
    for m in range(n, 0, -1):
        reduced: Poly = {}
        for exps, coeff in poly.items():
            key = exps[:-1]
            value = coeff / (exps[-1] + 1)
            reduced[key] = reduced.get(key, Fraction(0)) + value
        poly = reduced
    return poly.get((), Fraction(0))


def permutation_det(matrix):
    """Determinant as the signed sum over permutations, exact Scalars."""
    n = len(matrix)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        inversions = sum(
            1
            for i in range(n)
            for j in range(i + 1, n)
            if perm[i] > perm[j]
        )
        term = Fraction(1) if inversions % 2 == 0 else Fraction(-1)
        for i in range(n):
            term = scalars.mul(term, matrix[i][perm[i]])
        total = scalars.add(total, term)
    return total


def disc_moment_numeric(m: int, n: int, panels: int = 1 << 12) -> float:
    """Composite-Simpson quadrature of the polar form
    integral cos^m sin^n dtheta / (m + n + 2)."""
    if panels % 2:
        panels += 1
    h = 2.0 * math.pi / panels

    def g(theta):
        return math.cos(theta) ** m * math.sin(theta) ** n

    acc = g(0.0) + g(2.0 * math.pi)
    for k in range(1, panels):
        acc += (4.0 if k % 2 else 2.0) * g(k * h)
    return (h / 3.0) * acc / (m + n + 2)


def binomial(n: int, k: int) -> int:
    return math.comb(n, k)


def hexagon_moment_numeric(p: int, q: int, panels: int = 4096) -> float:
    """Moment of the hexagon (+-(1+sqrt 3), 0), (+-1, +-1) by splitting
    into the square [-1,1]^2 plus two triangular caps; the caps integrate
    y in closed form and x by composite Simpson."""
    if q % 2 == 1:
        square = 0.0
    else:
        sx = 0.0 if p % 2 else 2.0 / (p + 1)
        square = sx * (2.0 / (q + 1))

    if q % 2 == 1:
        return 0.0
    root3 = math.sqrt(3.0)
    top = 1.0 + root3

    def cap(x):
        w = (top - x) / root3
        return x**p * (2.0 * w ** (q + 1) / (q + 1))

    if panels % 2:
        panels += 1
    h = (top - 1.0) / panels
    acc = cap(1.0) + cap(top)
    for k in range(1, panels):
        acc += (4.0 if k % 2 else 2.0) * cap(1.0 + k * h)
    right = (h / 3.0) * acc
    left = right * (1.0 if p % 2 == 0 else -1.0)
    return square + right + left
