"""Command line front end.

Exit status is 0 on success, 2 when a queried property is false and 1 on
errors.  The environment variable GTPOLY_MAX_CELLS caps enumeration work.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction
from typing import Sequence

from . import gt, marked_poset, polyoracle, string_d, tweaked_d
from .rootdata import (
    LieType,
    Weight,
    dominant_weights,
    epsilon_to_omega,
    frac,
    fundamental_weight,
    is_dominant,
    omega_to_epsilon,
    pairing,
    predicted_lattice,
)

log = logging.getLogger("gtpoly")

DEFAULT_MAX_CELLS = 1_000_000
EXIT_OK, EXIT_ERROR, EXIT_FALSE = 0, 1, 2


class UsageError(ValueError):
    pass


# parsing and formatting


def parse_numbers(text: str) -> list:
    try:
        return [frac(tok.strip()) for tok in text.split(",") if tok.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse {text!r} as comma separated rationals") from exc


def weight_from_args(args) -> Weight:
    if (args.eps is None) == (args.omega is None):
        raise UsageError("give exactly one of --eps or --omega")
    values = parse_numbers(args.eps if args.eps is not None else args.omega)
    rank = args.rank if args.rank is not None else len(values)
    if len(values) != rank:
        raise UsageError(f"rank {rank} needs {rank} weight coefficients, got {len(values)}")
    lt = LieType(args.family, rank)
    lam = Weight(lt, tuple(values)) if args.eps is not None else omega_to_epsilon(lt, values)
    log.info("weight eps=%s omega=%s", fmt_seq(lam.eps), fmt_seq(epsilon_to_omega(lam)))
    if not is_dominant(lam):
        raise UsageError(f"{lam} is not dominant integral")
    return lam


def max_cells() -> int:
    raw = os.environ.get("GTPOLY_MAX_CELLS")
    if raw is None:
        return DEFAULT_MAX_CELLS
    try:
        return int(raw)
    except ValueError as exc:
        raise UsageError("GTPOLY_MAX_CELLS must be an integer") from exc


def fmt(v: Fraction) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def fmt_seq(values) -> str:
    return "(" + ", ".join(fmt(v) for v in values) + ")"


def enc(v: Fraction) -> list:
    return [v.numerator, v.denominator]


def dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def default_kind(lam: Weight) -> str:
    return "tweakedD" if lam.family == "D" else f"gt{lam.family}"


def default_lattice(h: polyoracle.HPolytope) -> str:
    if h.kind == "gtB":
        return "B-standard"
    if h.kind == "tweakedD" and any(v.denominator == 2 for v in h.weight.eps):
        return "half-shifted"
    return "integers"


def grid_cells(h: polyoracle.HPolytope) -> int:
    """Number of grid points in the bounding box, the work unit of a count."""
    verts = polyoracle.vertex_enumeration(h)
    total = 1
    for k in range(h.dim):
        lo = min(v[k] for v in verts)
        hi = max(v[k] for v in verts)
        total *= int(hi - lo) + 2
    return total


def check_budget(work: int, what: str):
    limit = max_cells()
    if work > limit:
        raise UsageError(
            f"{what} needs about {work} cells, above the budget {limit}; "
            "raise GTPOLY_MAX_CELLS or pick a smaller weight"
        )


# diagrams


def emit_diagram(diagram) -> str:
    """DOT text for an identity diagram or a tweaked diagram."""
    if isinstance(diagram, tweaked_d.TweakedDiagram):
        if not diagram.nodes:
            return "graph tweaked {\n}\n"
        return tweaked_d.diagram_to_dot(diagram)
    if not diagram.poset.elements:
        return "graph identity {\n}\n"
    return marked_poset.diagram_to_dot(diagram)


def diagram_for(lam: Weight, values):
    if lam.family == "D":
        t = tweaked_d.TweakedPattern(lam, tuple(values))
        return tweaked_d.tweaked_diagram(lam, t)
    poset = gt.gt_poset(lam)
    names = gt.pattern_names(lam.type)
    cells = dict(zip(names, values))
    if len(values) != len(names):
        raise UsageError(f"{lam.type} patterns have {len(names)} entries, got {len(values)}")
    return marked_poset.identity_diagram(poset, {p: cells[p] for p in poset.unmarked})


def diagram_summary(diagram) -> dict:
    if isinstance(diagram, tweaked_d.TweakedDiagram):
        tags = tweaked_d.classify_components(diagram)
        comps = sorted(([sorted(c), tag] for c, tag in tags.items()), key=lambda x: diagram.nodes.index(x[0][0]))
        return {
            "components": comps,
            "white": sorted(diagram.white),
            "anomalies": tweaked_d.anomalies(diagram),
            "vertex": not any(tag in ("none", "triviality") for tag in tags.values()),
        }
    comps = diagram.components()
    return {
        "components": [[str(e) for e in c] for c in comps],
        "unmarked_components": [[str(e) for e in c] for c in diagram.unmarked_components()],
        "vertex": not diagram.unmarked_components(),
    }


# commands


def cmd_build(args, out) -> int:
    lam = weight_from_args(args)
    h = polyoracle.hrep(args.kind or default_kind(lam), lam)
    if args.format == "json":
        out.write(h.dumps() + "\n")
    else:
        out.write(f"{h.kind} {lam}: {h.dim} variables, {len(h.ineqs)} inequalities, {len(h.eqs)} equalities\n")
        for a, b in h.ineqs:
            out.write(f"  {_row_text(h.names, a)} <= {fmt(b)}\n")
        for a, b in h.eqs:
            out.write(f"  {_row_text(h.names, a)} = {fmt(b)}\n")
    return EXIT_OK


def _row_text(names, a) -> str:
    parts = []
    for nm, c in zip(names, a):
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        term = nm if mag == 1 else f"{fmt(mag)}*{nm}"
        parts.append(f"{sign} {term}")
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else text


def cmd_vertices(args, out) -> int:
    lam = weight_from_args(args)
    h = polyoracle.hrep(args.kind or default_kind(lam), lam)
    verts = polyoracle.sorted_vertices(h)
    if args.format == "json":
        out.write(dump([[enc(c) for c in v] for v in verts]) + "\n")
    else:
        out.write(" ".join(h.names) + "\n")
        for v in verts:
            out.write(fmt_seq(v) + "\n")
    return EXIT_OK


def cmd_is_lattice(args, out) -> int:
    lam = weight_from_args(args)
    kind, lattice = polyoracle.sweep_kind(lam)
    observed = polyoracle.observed_lattice(lam)
    report = {"weight": fmt_seq(lam.eps), "kind": kind, "lattice": lattice,
              "observed": observed, "predicted": predicted_lattice(lam)}
    if not observed:
        report["reason"] = _non_lattice_reason(lam)
        witness = _witness(lam)
        if witness is not None:
            report["witness"] = witness.to_json()
    if args.format == "json":
        out.write(dump(report) + "\n")
    else:
        out.write(f"{kind} {lam}: {'lattice' if observed else 'not a lattice polytope'}\n")
        if not observed:
            out.write(f"  {report['reason']}\n")
            if "witness" in report:
                out.write("  witness:\n" + _indent(_witness(lam).rows()))
    return EXIT_OK if observed else EXIT_FALSE


def _indent(rows) -> str:
    return "".join("    " + " ".join(fmt(v) for v in r) + "\n" for r in rows)


def _non_lattice_reason(lam: Weight) -> str:
    n = lam.rank
    if lam.family == "B":
        return f"<lambda, alpha_{n}^vee> = {fmt(pairing(lam, n))} is odd"
    if lam.family == "D":
        s = pairing(lam, n - 1) + pairing(lam, n)
        return f"<lambda, alpha_{n - 1}^vee> + <lambda, alpha_{n}^vee> = {fmt(s)} is odd"
    return "a vertex lies off the lattice"


def _witness(lam: Weight):
    if lam.family == "B":
        return gt.b_witness(lam)
    if lam.family == "D" and lam.rank >= 4:
        return tweaked_d.d_witness(lam)
    return None


def cmd_count(args, out) -> int:
    lam = weight_from_args(args)
    h = polyoracle.hrep(args.kind or default_kind(lam), lam)
    lattice = args.lattice or default_lattice(h)
    check_budget(grid_cells(h), "lattice point count")
    n = polyoracle.count_lattice_points(h, lattice)
    out.write(dump({"kind": h.kind, "lattice": lattice, "count": n}) + "\n" if args.format == "json" else f"{n}\n")
    return EXIT_OK


def cmd_dim(args, out) -> int:
    lam = weight_from_args(args)
    h = polyoracle.hrep(args.kind or default_kind(lam), lam)
    d = polyoracle.polytope_dimension(h)
    out.write(dump({"kind": h.kind, "ambient": h.dim, "dim": d}) + "\n" if args.format == "json" else f"{d}\n")
    return EXIT_OK


def cmd_interior(args, out) -> int:
    lam = weight_from_args(args)
    h = polyoracle.hrep(args.kind or default_kind(lam), lam)
    check_budget(grid_cells(h), "interior point search")
    pts = polyoracle.interior_lattice_points(h)
    if args.format == "json":
        out.write(dump([[enc(c) for c in p] for p in pts]) + "\n")
    else:
        for p in pts:
            out.write(fmt_seq(p) + "\n")
    return EXIT_OK if pts else EXIT_FALSE


def cmd_reflexive(args, out) -> int:
    lam = weight_from_args(args)
    h = polyoracle.hrep(args.kind or default_kind(lam), lam)
    check_budget(grid_cells(h), "reflexivity check")
    ok, p = polyoracle.reflexive_after_translation(h)
    if args.format == "json":
        out.write(dump({"kind": h.kind, "reflexive": ok, "interior": None if p is None else [enc(c) for c in p]}) + "\n")
    else:
        out.write(f"{'reflexive' if ok else 'not reflexive'}" + ("" if p is None else f", interior point {fmt_seq(p)}") + "\n")
    return EXIT_OK if ok else EXIT_FALSE


def cmd_map(args, out) -> int:
    lam = weight_from_args(args)
    if lam.family != "D":
        raise UsageError("the string map is implemented for type D only")
    if (args.string is None) == (args.pattern is None):
        raise UsageError("give exactly one of --string or --pattern")
    if args.string is not None:
        a = string_d.StringPointD(lam.rank, tuple(parse_numbers(args.string)))
        t = string_d.phi_tilde(lam, a)
        if args.format == "json":
            out.write(dump(t.to_json()) + "\n")
        else:
            out.write(_indent(t.rows()))
        return EXIT_OK
    t = tweaked_d.TweakedPattern(lam, tuple(parse_numbers(args.pattern)))
    a = string_d.phi_tilde_inverse(lam, t)
    out.write(dump(a.to_json()) + "\n" if args.format == "json" else fmt_seq(a.values) + "\n")
    return EXIT_OK


def cmd_diagram(args, out) -> int:
    lam = weight_from_args(args)
    d = diagram_for(lam, parse_numbers(args.pattern))
    if args.format == "dot":
        out.write(emit_diagram(d))
    elif args.format == "json":
        out.write(dump(diagram_summary(d)) + "\n")
    else:
        summary = diagram_summary(d)
        for comp in summary["components"]:
            out.write(f"{comp}\n")
        out.write(f"vertex: {summary['vertex']}\n")
    return EXIT_OK


def cmd_witness(args, out) -> int:
    lam = weight_from_args(args)
    w = _witness(lam)
    if w is None:
        raise UsageError("witness patterns exist for type B and for type D of rank at least 4")
    if args.format == "dot":
        out.write(emit_diagram(diagram_for(lam, w.values)))
    elif args.format == "json":
        out.write(dump(w.to_json()) + "\n")
    else:
        out.write(_indent(w.rows()))
    return EXIT_OK


def sweep_weights(family: str, rank: int, max_omega: int, fundamental: bool) -> list:
    lt = LieType(family, rank)
    if fundamental:
        return [fundamental_weight(lt, i) for i in range(1, rank + 1)]
    return list(dominant_weights(lt, max_omega))


def cmd_sweep(args, out) -> int:
    weights = sweep_weights(args.family, args.rank, args.max_omega, args.fundamental)
    cells = len(polyoracle.hrep(polyoracle.sweep_kind(weights[0])[0], weights[0]).names)
    check_budget(len(weights) * cells * 1000, "sweep")
    rows = polyoracle.sweep_rows(weights)
    mismatches = [r for r in rows if not r.agrees]
    if args.format == "json":
        out.write(dump([
            {"omega": [enc(v) for v in r.omega], "eps": [enc(v) for v in r.weight.eps],
             "predicted": r.predicted, "observed": r.observed, "vertices": r.vertices}
            for r in rows
        ]) + "\n")
    else:
        out.write(f"{'omega':<16}{'eps':<28}{'vertices':>9}  predicted  observed\n")
        for r in rows:
            out.write(f"{fmt_seq(r.omega):<16}{fmt_seq(r.weight.eps):<28}{r.vertices:>9}  "
                      f"{str(r.predicted):<9}  {r.observed}\n")
            if not r.observed and _witness(r.weight) is not None:
                out.write("  witness:\n" + _indent(_witness(r.weight).rows()))
        out.write(f"{len(rows)} weights, {len(mismatches)} mismatches\n")
    if args.plot:
        from .report import plot_sweep

        plot_sweep(rows, args.plot, f"{args.family}{args.rank}")
    if mismatches:
        log.error("%d weights disagree with the prediction", len(mismatches))
        return EXIT_ERROR
    return EXIT_OK


# argument parser


def _add_weight(p, rank_required=False):
    p.add_argument("--family", required=True, choices=("A", "B", "C", "D"))
    p.add_argument("--rank", type=int, required=rank_required)
    p.add_argument("--eps", help="epsilon coefficients, e.g. 4,2,0 or 1/2,1/2,1/2")
    p.add_argument("--omega", help="fundamental weight coefficients, e.g. 0,1")


def _add_format(p, choices=("json", "text"), default="text"):
    p.add_argument("--format", choices=choices, default=default)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gtpoly", description="Gelfand-Tsetlin, tweaked and string polytopes")
    parser.add_argument("-v", "--verbose", action="store_true", help="log weight conversions")
    sub = parser.add_subparsers(dest="command", required=True)
    kinds = polyoracle.KINDS

    p = sub.add_parser("build", help="print the inequality description")
    _add_weight(p)
    p.add_argument("--kind", choices=kinds)
    _add_format(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("vertices", help="enumerate vertices exactly")
    _add_weight(p)
    p.add_argument("--kind", choices=kinds)
    _add_format(p)
    p.set_defaults(func=cmd_vertices)

    p = sub.add_parser("is-lattice", help="are all vertices on the lattice")
    _add_weight(p)
    _add_format(p)
    p.set_defaults(func=cmd_is_lattice)

    p = sub.add_parser("count", help="count lattice points")
    _add_weight(p)
    p.add_argument("--kind", choices=kinds)
    p.add_argument("--lattice", choices=polyoracle.LATTICES)
    _add_format(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("dim", help="affine dimension")
    _add_weight(p)
    p.add_argument("--kind", choices=kinds)
    _add_format(p)
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("interior", help="interior lattice points")
    _add_weight(p)
    p.add_argument("--kind", choices=kinds)
    _add_format(p)
    p.set_defaults(func=cmd_interior)

    p = sub.add_parser("reflexive", help="reflexivity after translation")
    _add_weight(p)
    p.add_argument("--kind", choices=kinds)
    _add_format(p)
    p.set_defaults(func=cmd_reflexive)

    p = sub.add_parser("map", help="string coordinates to tweaked patterns and back (type D)")
    _add_weight(p)
    p.add_argument("--string", help="string point in storage order")
    p.add_argument("--pattern", help="tweaked pattern in storage order (inverse map)")
    _add_format(p, default="json")
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("diagram", help="identity or tweaked diagram of a pattern")
    _add_weight(p)
    p.add_argument("--pattern", required=True, help="pattern entries in storage order")
    _add_format(p, ("json", "dot", "text"), "dot")
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("sweep", help="compare observed and predicted latticeness")
    p.add_argument("--family", required=True, choices=("A", "B", "C", "D"))
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--max-omega", type=int, default=1)
    p.add_argument("--fundamental", action="store_true", help="fundamental weights only")
    p.add_argument("--plot", metavar="PNG", help="also write a figure of the sweep")
    _add_format(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("witness", help="non-lattice witness pattern")
    _add_weight(p)
    _add_format(p, ("json", "dot", "text"), "text")
    p.set_defaults(func=cmd_witness)
    return parser


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args, out)
    except (ValueError, TypeError, KeyError) as exc:
        print(f"gtpoly {args.command}: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
