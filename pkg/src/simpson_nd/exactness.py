"""Exactness certification and the linear solves for the blend parameter
and for free node weights.

``exactness_degree`` scans monomials in graded lexicographic order
(ascending total degree; within a degree, descending exponent tuples, so
x1^d comes first) and certifies the largest degree whose residuals all
vanish exactly.  Exactness for monomials extends to all polynomials of
the same degree by linearity.

The solvers return values, not exceptions: infeasibility is a finding,
carried with a checkable certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Union

from . import scalars
from .errors import DimensionMismatch, RegionMismatch
from .regions import MultiIndex, Region
from .rules import CubatureRule, monomial
from .scalars import Scalar, is_zero


def monomials_of_degree(nvars: int, degree: int) -> Iterator[MultiIndex]:
    """Exponent tuples of one total degree, in descending lexicographic order."""
    if nvars == 1:
        yield (degree,)
        return
    for head in range(degree, -1, -1):
        for rest in monomials_of_degree(nvars - 1, degree - head):
            yield (head,) + rest


def monomials_up_to(nvars: int, max_degree: int) -> Iterator[MultiIndex]:
    for d in range(max_degree + 1):
        yield from monomials_of_degree(nvars, d)


def monomial_label(alpha: MultiIndex) -> str:
    """Readable monomial name: x, y, z for up to three variables."""
    if all(e == 0 for e in alpha):
        return "1"
    names = (
        ["x", "y", "z"][: len(alpha)]
        if len(alpha) <= 3
        else [f"x{i + 1}" for i in range(len(alpha))]
    )
    parts = []
    for name, e in zip(names, alpha):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def residual(rule: CubatureRule, alpha) -> Scalar:
    """rule applied to x^alpha, minus the exact region moment."""
    alpha = tuple(int(e) for e in alpha)
    if len(alpha) != rule.region.dimension:
        raise DimensionMismatch(
            f"multi-index {alpha} does not match region dimension"
        )
    return scalars.sub(rule.apply_poly(monomial(alpha)), rule.region.moment(alpha))


@dataclass(frozen=True)
class ExactnessReport:
    """Certified exactness degree plus the first failure found, if any."""

    label: str
    certified_degree: int
    failing: Optional[MultiIndex]
    failing_residual: Optional[Scalar]
    max_degree: int

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "degree": self.certified_degree,
            "failing": list(self.failing) if self.failing is not None else None,
            "residual": (
                scalars.scalar_to_json(self.failing_residual)
                if self.failing_residual is not None
                else None
            ),
            "tested": self.max_degree,
        }


def exactness_degree(rule: CubatureRule, max_degree: int) -> ExactnessReport:
    """Scan residuals degree by degree; certify through the last clean degree."""
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    nvars = rule.region.dimension
    for d in range(max_degree + 1):
        for alpha in monomials_of_degree(nvars, d):
            r = residual(rule, alpha)
            if not is_zero(r):
                return ExactnessReport(rule.label, d - 1, alpha, r, max_degree)
    return ExactnessReport(rule.label, max_degree, None, None, max_degree)


@dataclass(frozen=True)
class Equation:
    """One linear equation: coefficients dot unknowns == rhs."""

    label: str
    coefficients: tuple[Scalar, ...]
    rhs: Scalar


@dataclass(frozen=True)
class UniqueSolution:
    values: tuple[Scalar, ...]


@dataclass(frozen=True)
class Infeasible:
    """No solution; ``equations`` is a minimal inconsistent certificate.

    For weight systems, ``multipliers`` gives an exact linear combination
    of the certificate equations with zero left side and nonzero right
    side (a direct witness that no solution exists)."""

    witness: str
    equations: tuple[Equation, ...] = ()
    multipliers: tuple[Scalar, ...] = ()


@dataclass(frozen=True)
class Underdetermined:
    particular: tuple[Scalar, ...]
    nullity: int


LinearSolveOutcome = Union[UniqueSolution, Infeasible, Underdetermined]


def solve_lambda(
    m: CubatureRule, t: CubatureRule, targets
) -> LinearSolveOutcome:
    """Solve lam*(m - t) applied to x^alpha == moment - t(x^alpha) for one
    shared lam over all target monomials.

    Equations that reduce to 0 == 0 carry no information; if every target
    does, the outcome is Underdetermined.  A lam that exists but is
    irrational cannot define a rational blend and is reported as
    Infeasible with the defining equation as witness.
    """
    if m.region != t.region:
        raise RegionMismatch("rules must share one region")
    region = m.region
    first: Optional[tuple[Equation, Scalar]] = None
    for alpha in targets:
        alpha = tuple(int(e) for e in alpha)
        mono = monomial(alpha)
        coef = scalars.sub(m.apply_poly(mono), t.apply_poly(mono))
        rhs = scalars.sub(region.moment(alpha), t.apply_poly(mono))
        equation = Equation(monomial_label(alpha), (coef,), rhs)
        if is_zero(coef):
            if is_zero(rhs):
                continue
            return Infeasible(
                witness=(
                    f"equation for {equation.label} reads 0*lam = "
                    f"{scalars.format_scalar(rhs)}"
                ),
                equations=(equation,),
            )
        lam = scalars.div(rhs, coef)
        if first is None:
            first = (equation, lam)
            continue
        if not scalars.eq(lam, first[1]):
            return Infeasible(
                witness=(
                    f"{first[0].label} forces lam = "
                    f"{scalars.format_scalar(first[1])} but {equation.label} "
                    f"forces lam = {scalars.format_scalar(lam)}"
                ),
                equations=(first[0], equation),
            )
    if first is None:
        return Underdetermined(particular=(Fraction(0),), nullity=1)
    equation, lam = first
    if not isinstance(lam, Fraction):
        return Infeasible(
            witness=(
                f"the only solution lam = {scalars.format_scalar(lam)} "
                f"(from {equation.label}) is irrational"
            ),
            equations=(equation,),
        )
    return UniqueSolution((lam,))


def _gauss_jordan(rows: list[list[Scalar]], ncols: int) -> list[int]:
    """In-place reduced row echelon over the first ``ncols`` columns;
    trailing columns ride along.  Returns the pivot column list."""
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot_row = None
        for i in range(r, len(rows)):
            if not is_zero(rows[i][col]):
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        piv = rows[r][col]
        rows[r] = [scalars.div(v, piv) for v in rows[r]]
        for i in range(len(rows)):
            if i != r and not is_zero(rows[i][col]):
                f = rows[i][col]
                rows[i] = [
                    scalars.sub(v, scalars.mul(f, w))
                    for v, w in zip(rows[i], rows[r])
                ]
        pivots.append(col)
        r += 1
    return pivots


def solve_weights(region: Region, nodes, targets) -> LinearSolveOutcome:
    """Exact solve for one weight per node so the rule matches the region
    moments of every target monomial.

    Works over whatever quadratic field the node coordinates need.  An
    inconsistent system yields an Infeasible value whose multipliers
    combine the cited equations into 0 == nonzero.
    """
    nodes = tuple(tuple(scalars.as_scalar(c) for c in p) for p in nodes)
    targets = [tuple(int(e) for e in alpha) for alpha in targets]
    nunk = len(nodes)
    equations: list[Equation] = []
    for alpha in targets:
        mono = monomial(alpha)
        coeffs = tuple(mono.evaluate(p) for p in nodes)
        equations.append(Equation(monomial_label(alpha), coeffs, region.moment(alpha)))
    # augmented block [A | b | I] so every reduced row remembers its origin
    rows: list[list[Scalar]] = []
    for i, eqn in enumerate(equations):
        ident: list[Scalar] = [
            Fraction(1) if j == i else Fraction(0) for j in range(len(equations))
        ]
        rows.append(list(eqn.coefficients) + [eqn.rhs] + ident)
    pivots = _gauss_jordan(rows, nunk)
    rank = len(pivots)
    for row in rows[rank:]:
        if is_zero(row[nunk]):
            continue
        multipliers = tuple(row[nunk + 1 :])
        used = [
            (equations[i], mult)
            for i, mult in enumerate(multipliers)
            if not is_zero(mult)
        ]
        labels = ", ".join(eqn.label for eqn, _ in used)
        return Infeasible(
            witness=(
                f"combining the equations for {labels} gives "
                f"0 = {scalars.format_scalar(row[nunk])}"
            ),
            equations=tuple(eqn for eqn, _ in used),
            multipliers=tuple(mult for _, mult in used),
        )
    solution: list[Scalar] = [Fraction(0)] * nunk
    for r, col in enumerate(pivots):
        solution[col] = rows[r][nunk]
    if rank == nunk:
        return UniqueSolution(tuple(solution))
    return Underdetermined(particular=tuple(solution), nullity=nunk - rank)
