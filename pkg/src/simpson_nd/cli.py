"""Command-line surface.

Subcommands: verify, moments, derive, family, compound, catalog.
Output formats: text (default), json, csv; the SIMPSON_ND_FORMAT
environment variable overrides the default.  Exit codes: 0 success
(including negative findings like "infeasible"), 1 domain error or failed
verification, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import claims as claims_mod
from . import compound as compound_mod
from . import exactness, expr, families, rules, scalars
from .errors import SimpsonNdError
from .regions import (
    Cube,
    Region,
    Simplex,
    UnitDisc,
    hexagon_paper,
    region_from_json,
    region_to_json,
    trapezoid_paper,
)

FORMATS = ("text", "json", "csv")


def _default_format() -> str:
    env = os.environ.get("SIMPSON_ND_FORMAT", "text").strip().lower()
    return env if env in FORMATS else "text"


def _parse_region(alias: str | None, path: str | None) -> Region:
    if path:
        with open(path, "r", encoding="utf-8") as fh:
            return region_from_json(json.load(fh))
    if not alias:
        raise ValueError("a region is required (--region or --region-file)")
    alias = alias.strip().lower()
    if alias == "disc":
        return UnitDisc()
    if alias == "trapezoid-paper":
        return trapezoid_paper()
    if alias == "hexagon-paper":
        return hexagon_paper()
    if ":" in alias:
        kind, _, dim = alias.partition(":")
        if kind == "simplex":
            return Simplex(int(dim))
        if kind == "cube":
            return Cube(int(dim))
    raise ValueError(
        f"unknown region {alias!r}; use simplex:N, cube:N, disc, "
        "trapezoid-paper, hexagon-paper, or --region-file"
    )


def _region_name(region: Region, alias: str | None = None) -> str:
    if alias:
        return alias
    if isinstance(region, Simplex):
        return f"simplex:{region.dimension}"
    if isinstance(region, Cube):
        return f"cube:{region.dimension}"
    if isinstance(region, UnitDisc):
        return "disc"
    return "polygon"


def _display_monomials(dim: int, degree: int):
    """Presentation order: per degree, pure powers before mixed terms."""
    for d in range(degree + 1):
        block = sorted(
            exactness.monomials_of_degree(dim, d),
            key=lambda alpha: (sum(1 for e in alpha if e), tuple(-e for e in alpha)),
        )
        yield from block


def _emit(fmt: str, payload: dict, table: tuple[list[str], list[list[str]]] | None,
          text_lines: list[str]) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2))
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if table is not None:
            header, rows = table
            writer.writerow(header)
            writer.writerows(rows)
        else:
            writer.writerow(["key", "value"])
            for key, value in payload.items():
                writer.writerow([key, json.dumps(value) if isinstance(value, (dict, list)) else value])
        print(buf.getvalue(), end="")
    else:
        for line in text_lines:
            print(line)


def _fmt(x) -> str:
    return scalars.format_scalar(x)


def _cmd_verify(args) -> int:
    fmt = args.format
    if args.all:
        results = claims_mod.run_claims()
        ok = all(c.ok for c in results)
        payload = {
            "command": "verify",
            "all": True,
            "ok": ok,
            "claims": [
                {"name": c.name, "ok": c.ok, "detail": c.detail} for c in results
            ],
        }
        rows = [[c.name, "pass" if c.ok else "FAIL", c.detail] for c in results]
        lines = [f"{'pass' if c.ok else 'FAIL':4}  {c.name}: {c.detail}" for c in results]
        lines.append(f"{sum(c.ok for c in results)}/{len(results)} claims confirmed")
        _emit(fmt, payload, (["claim", "status", "detail"], rows), lines)
        return 0 if ok else 1
    if not args.rule:
        raise ValueError("verify needs --rule NAME or --all")
    rule = rules.named_rule(args.rule, args.dim)
    report = exactness.exactness_degree(rule, args.max_degree)
    payload = {"command": "verify", **report.to_json()}
    lines = [
        f"rule {rule.label}: certified degree {report.certified_degree} "
        f"(tested through degree {report.max_degree})"
    ]
    if report.failing is not None:
        lines.append(
            f"first failing monomial {exactness.monomial_label(report.failing)} "
            f"= {report.failing}, residual {_fmt(report.failing_residual)}"
        )
    else:
        lines.append("no failing monomial up to the tested degree")
    rows = [
        [
            report.label,
            str(report.certified_degree),
            str(report.max_degree),
            "" if report.failing is None else exactness.monomial_label(report.failing),
            "" if report.failing_residual is None else _fmt(report.failing_residual),
        ]
    ]
    _emit(fmt, payload, (["rule", "degree", "tested", "failing", "residual"], rows), lines)
    return 0


def _cmd_moments(args) -> int:
    region = _parse_region(args.region, args.region_file)
    dim = region.dimension
    entries = []
    for alpha in _display_monomials(dim, args.degree):
        value = region.moment(alpha)
        entries.append((alpha, value))
    payload = {
        "command": "moments",
        "region": region_to_json(region),
        "degree": args.degree,
        "moments": [
            {
                "exponents": list(alpha),
                "label": exactness.monomial_label(alpha),
                "value": scalars.scalar_to_json(value),
                "decimal": scalars.to_float(value),
            }
            for alpha, value in entries
        ],
    }
    rows = [
        [
            exactness.monomial_label(alpha),
            " ".join(str(e) for e in alpha),
            _fmt(value),
            repr(scalars.to_float(value)),
        ]
        for alpha, value in entries
    ]
    lines = [f"moments of {_region_name(region, args.region)} through degree {args.degree}:"]
    lines += [
        f"  {exactness.monomial_label(alpha)} = {_fmt(value)}"
        for alpha, value in entries
    ]
    _emit(args.format, payload, (["monomial", "exponents", "exact", "decimal"], rows), lines)
    return 0


def _parse_targets(text: str, dim: int) -> list[tuple[int, ...]]:
    text = text.strip().lower()
    if text.startswith("deg"):
        return list(exactness.monomials_up_to(dim, int(text[3:])))
    raise ValueError(f"unknown targets {text!r}; use degN")


def _parse_exclude(text: str, dim: int) -> tuple[int, ...]:
    poly = expr.to_monomial_poly(expr.parse(text), dim)
    if len(poly.terms) != 1:
        raise ValueError(f"--exclude must name a single monomial, got {text!r}")
    (alpha, coeff), = poly.terms.items()
    if coeff != 1:
        raise ValueError(f"--exclude must be a bare monomial, got {text!r}")
    return alpha


def _outcome_payload(outcome) -> dict:
    if isinstance(outcome, exactness.UniqueSolution):
        return {
            "outcome": "unique",
            "values": [scalars.scalar_to_json(v) for v in outcome.values],
        }
    if isinstance(outcome, exactness.Infeasible):
        return {
            "outcome": "infeasible",
            "witness": outcome.witness,
            "equations": [e.label for e in outcome.equations],
        }
    return {
        "outcome": "underdetermined",
        "particular": [scalars.scalar_to_json(v) for v in outcome.particular],
        "nullity": outcome.nullity,
    }


def _spread_nodes(region: Region):
    """The vertex set, or the four axis points for the vertex-free disc."""
    if isinstance(region, UnitDisc):
        return ((1, 0), (0, 1), (-1, 0), (0, -1))
    return tuple(region.vertices())


def _cmd_derive(args) -> int:
    region = _parse_region(args.region, args.region_file)
    dim = region.dimension
    targets = _parse_targets(args.targets, dim)
    if args.exclude:
        alpha = _parse_exclude(args.exclude, dim)
        targets = [t for t in targets if t != alpha]
    if args.mode == "lambda":
        spread = (
            rules.boundary_rule(region, _spread_nodes(region))
            if isinstance(region, UnitDisc)
            else rules.vertex_rule(region)
        )
        outcome = exactness.solve_lambda(
            rules.midpoint_rule(region), spread, targets
        )
        unknowns = ["lambda"]
    else:
        nodes = (region.centroid(),) + _spread_nodes(region)
        outcome = exactness.solve_weights(region, nodes, targets)
        unknowns = [f"w{i + 1}" for i in range(len(nodes))]
    payload = {
        "command": "derive",
        "mode": args.mode,
        "region": region_to_json(region),
        "targets": [list(t) for t in targets],
        **_outcome_payload(outcome),
    }
    lines = [f"derive --mode {args.mode} on {_region_name(region, args.region)}:"]
    rows: list[list[str]] = []
    if isinstance(outcome, exactness.UniqueSolution):
        for name, v in zip(unknowns, outcome.values):
            lines.append(f"  {name} = {_fmt(v)} ({scalars.to_float(v)!r})")
            rows.append([name, _fmt(v), repr(scalars.to_float(v))])
    elif isinstance(outcome, exactness.Infeasible):
        lines.append(f"  infeasible: {outcome.witness}")
        rows.append(["infeasible", outcome.witness, ""])
    else:
        lines.append(
            f"  underdetermined (nullity {outcome.nullity}); "
            f"particular solution {[_fmt(v) for v in outcome.particular]}"
        )
        rows.append(["underdetermined", str(outcome.nullity), ""])
    _emit(args.format, payload, (["unknown", "value", "decimal"], rows), lines)
    return 0


def _values(text: str, count: int) -> list[Fraction]:
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if len(parts) != count:
        raise ValueError(f"expected {count} comma-separated rationals, got {text!r}")
    return [Fraction(p) for p in parts]


def _residual_report(args, name: str, res, extra: dict | None = None,
                     extra_lines: list[str] | None = None) -> int:
    payload = {
        "command": "family",
        "system": name,
        "solves": res.all_zero,
        "residuals": [
            {"equation": eq_name, "value": scalars.scalar_to_json(v)}
            for eq_name, v in zip(res.names, res.residuals)
        ],
    }
    if extra:
        payload.update(extra)
    rows = [[eq_name, _fmt(v)] for eq_name, v in zip(res.names, res.residuals)]
    lines = [f"{name} system residuals:"]
    lines += [f"  {eq_name}: {_fmt(v)}" for eq_name, v in zip(res.names, res.residuals)]
    lines.append("solves the system" if res.all_zero else "does not solve the system")
    if extra_lines:
        lines += extra_lines
    _emit(args.format, payload, (["equation", "residual"], rows), lines)
    return 0


def _cmd_family(args) -> int:
    system = args.system
    if system == "triangle":
        if args.point:
            a, b, c, lam = _values(args.point, 4)
            return _residual_report(args, system, families.triangle_system(a, b, c, lam))
        c = Fraction(args.param if args.param is not None else "1/2")
        ok, res = families.verify_triangle_family(c)
        member = families.triangle_family_member(c)
        roots = sorted(families.triangle_selector_roots())
        return _residual_report(
            args, system, res,
            extra={
                "parameter": str(c),
                "member": {k: scalars.scalar_to_json(v)
                           for k, v in zip("abc", member[:3])} | {
                               "lambda": scalars.scalar_to_json(member[3])},
                "selector_roots": [str(r) for r in roots],
            },
            extra_lines=[
                f"family member at c={c}: a={_fmt(member[0])}, b={_fmt(member[1])}, "
                f"lambda={_fmt(member[3])}",
                f"distinguished parameters: {', '.join(str(r) for r in roots)}",
            ],
        )
    if system == "square":
        if args.point:
            a, b, c, d, lam = _values(args.point, 5)
            return _residual_report(args, system, families.square_system(a, b, c, d, lam))
        d = Fraction(args.param if args.param is not None else "1/2")
        ok, res = families.verify_square_family(d)
        member = families.square_family_member(d)
        roots = sorted(families.square_selector_roots())
        return _residual_report(
            args, system, res,
            extra={"parameter": str(d),
                   "lambda": scalars.scalar_to_json(member[4]),
                   "selector_roots": [str(r) for r in roots]},
            extra_lines=[
                f"family member at d={d}: lambda={_fmt(member[4])}",
                f"parameters with the extra x^3*y exactness: "
                f"{', '.join(str(r) for r in roots)}",
            ],
        )
    if system == "trapezoid":
        if args.point:
            a, b, c, d, lam = _values(args.point, 5)
            return _residual_report(args, system, families.trapezoid_system(a, b, c, d, lam))
        conjugate = args.branch == "conjugate"
        a, b, c, d, lam = families.trapezoid_family_member(conjugate)
        res = families.trapezoid_system(a, b, c, d, lam)
        return _residual_report(
            args, system, res,
            extra={"branch": args.branch,
                   "member": {"a": scalars.scalar_to_json(a),
                              "b": scalars.scalar_to_json(b),
                              "c": scalars.scalar_to_json(c),
                              "d": scalars.scalar_to_json(d),
                              "lambda": scalars.scalar_to_json(lam)}},
            extra_lines=[
                f"a={_fmt(a)}", f"b={_fmt(b)}", f"c={_fmt(c)}", f"d={_fmt(d)}",
                f"lambda={_fmt(lam)}",
            ],
        )
    # simplex3
    if args.vertex_search:
        solutions = families.simplex3_vertex_solutions()
        payload = {
            "command": "family",
            "system": "simplex3",
            "vertex_search": True,
            "lambda": "4/5",
            "solutions": [[str(v) for v in sol] for sol in solutions],
        }
        rows = [[str(i + 1), ", ".join(str(v) for v in sol)]
                for i, sol in enumerate(solutions)]
        lines = [f"vertex-type placements solving the system at lambda=4/5: "
                 f"{len(solutions)}"]
        lines += ["  (" + ", ".join(str(v) for v in sol) + ")" for sol in solutions]
        _emit(args.format, payload, (["solution", "parameters"], rows), lines)
        return 0
    if args.point:
        vals = _values(args.point, 9)
        return _residual_report(
            args, "simplex3", families.simplex3_face_system(vals[:8], vals[8])
        )
    third = Fraction(1, 3)
    res = families.simplex3_face_system((third,) * 8, Fraction(-4, 5))
    return _residual_report(
        args, "simplex3", res,
        extra={"point": "all 1/3", "lambda": "-4/5"},
        extra_lines=["face-center placement with lambda=-4/5"],
    )


def _cmd_compound(args) -> int:
    rule = rules.named_rule(args.rule, args.dim)
    tree = expr.parse(args.expr)
    f = expr.as_function(tree)
    lo, _, hi = args.levels.partition(":")
    levels = list(range(int(lo), int(hi or lo) + 1))
    if args.reference is not None:
        reference = float(args.reference)
        ref_kind = "explicit"
    else:
        try:
            poly = expr.to_monomial_poly(tree, rule.region.dimension)
            reference = scalars.to_float(_poly_integral(rule, poly))
            ref_kind = "exact"
        except SimpsonNdError:
            reference = compound_mod.compound_apply(rule, max(levels) + 3, f).estimate
            ref_kind = f"level-{max(levels) + 3} estimate"
    estimates = [compound_mod.compound_apply(rule, lv, f) for lv in levels]
    errors = [abs(e.estimate - reference) for e in estimates]
    rows = []
    for i, (est, err) in enumerate(zip(estimates, errors)):
        ratio = "" if i == 0 or err == 0 else f"{errors[i - 1] / err:.3f}"
        rows.append([str(est.level), str(est.cells), repr(est.estimate), repr(err), ratio])
    payload = {
        "command": "compound",
        "rule": rule.label,
        "expr": args.expr,
        "reference": reference,
        "reference_kind": ref_kind,
        "rows": [
            {"level": e.level, "cells": e.cells, "estimate": e.estimate,
             "error": err}
            for e, err in zip(estimates, errors)
        ],
    }
    lines = [f"compound {rule.label} on {args.expr} (reference {reference!r}, {ref_kind})"]
    lines += ["level,cells,estimate,error,ratio"]
    lines += [",".join(row) for row in rows]
    try:
        order = compound_mod.convergence_order(estimates, reference)
        payload["order"] = order
        lines.append(f"fitted order {order:.3f}")
    except SimpsonNdError as exc:
        payload["order"] = None
        lines.append(f"no order fit: {exc}")
    _emit(args.format, payload, (["level", "cells", "estimate", "error", "ratio"], rows), lines)
    return 0


def _poly_integral(rule, poly):
    acc = None
    for alpha, coeff in poly.terms.items():
        term = scalars.mul(Fraction(coeff), rule.region.moment(alpha))
        acc = term if acc is None else scalars.add(acc, term)
    return acc if acc is not None else Fraction(0)


_CATALOG_DEGREE_CAP = 5


def _cmd_catalog(args) -> int:
    dim = args.dim
    entries = [
        rules.cr1(dim),
        rules.cr2(dim),
        rules.cr3(dim),
        rules.cr4(),
        rules.cr5(),
        rules.cr5_conjugate(),
        rules.cr6(),
        rules.triangle_midedge(),
    ]
    payload_rules = []
    rows = []
    lines = []
    for rule in entries:
        report = exactness.exactness_degree(rule, _CATALOG_DEGREE_CAP)
        payload_rules.append(
            {**rules.rule_to_json(rule), "degree": report.certified_degree}
        )
        lines.append(
            f"{rule.label}  [{_region_name(rule.region)}]  "
            f"degree {report.certified_degree}, {len(rule.nodes)} nodes"
        )
        for node, w in zip(rule.nodes, rule.weights):
            point = "(" + ", ".join(_fmt(c) for c in node) + ")"
            approx = "(" + ", ".join(f"{scalars.to_float(c):.6f}" for c in node) + ")"
            lines.append(f"    {point} ~ {approx}  weight {_fmt(w)} ~ {scalars.to_float(w):.6f}")
            rows.append([rule.label, str(report.certified_degree), point, _fmt(w)])
    payload = {"command": "catalog", "rules": payload_rules}
    _emit(args.format, payload, (["rule", "degree", "node", "weight"], rows), lines)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="simpson-nd",
        description="Exact blended cubature rules and their certification.",
    )
    parser.add_argument(
        "--format", choices=FORMATS, default=_default_format(),
        help="output format (default from SIMPSON_ND_FORMAT, else text)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="certify exactness degrees")
    p.add_argument("--rule", help="rule name: CR1..CR6, CR5*, TriangleMidedge")
    p.add_argument("--dim", type=int, default=None, help="dimension for CR1..CR3")
    p.add_argument("--max-degree", type=int, default=5)
    p.add_argument("--all", action="store_true", help="run the whole claim suite")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("moments", help="exact region moments")
    p.add_argument("--region", help="simplex:N, cube:N, disc, trapezoid-paper, hexagon-paper")
    p.add_argument("--region-file", help="path to a region JSON file")
    p.add_argument("--degree", type=int, default=2)
    p.set_defaults(func=_cmd_moments)

    p = sub.add_parser("derive", help="solve for the blend parameter or free weights")
    p.add_argument("--region", help="region alias")
    p.add_argument("--region-file", help="path to a region JSON file")
    p.add_argument("--targets", default="deg2", help="target monomials, e.g. deg2")
    p.add_argument("--exclude", help="drop one monomial from the targets, e.g. 'x*y'")
    p.add_argument("--mode", choices=("lambda", "weights"), default="lambda")
    p.set_defaults(func=_cmd_derive)

    p = sub.add_parser("family", help="evaluate or verify the node-placement systems")
    p.add_argument("system", choices=("triangle", "square", "trapezoid", "simplex3"))
    p.add_argument("--param", help="family parameter (triangle: c, square: d)")
    p.add_argument("--point", help="raw parameter tuple, comma separated")
    p.add_argument("--branch", choices=("primary", "conjugate"), default="primary",
                   help="trapezoid family branch")
    p.add_argument("--vertex-search", action="store_true",
                   help="simplex3: search vertex-type placements at lambda=4/5")
    p.set_defaults(func=_cmd_family)

    p = sub.add_parser("compound", help="subdivision convergence study")
    p.add_argument("--rule", required=True)
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--expr", required=True, help="integrand, e.g. 'exp(x+y)'")
    p.add_argument("--levels", default="1:5", help="level range lo:hi")
    p.add_argument("--reference", type=float, default=None,
                   help="reference value (default: exact for polynomials)")
    p.set_defaults(func=_cmd_compound)

    p = sub.add_parser("catalog", help="list the named rules")
    p.add_argument("--dim", type=int, default=2, help="dimension for CR1..CR3")
    p.set_defaults(func=_cmd_catalog)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (SimpsonNdError, ValueError, OSError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
