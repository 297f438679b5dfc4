"""Command line interface: ``triact <subcommand> --family ... [options]``.

Exit codes: 0 success, 1 a checked property failed, 2 usage error, 3 budget
exceeded.
"""

from __future__ import annotations

import argparse
import json
import re
import shlex
import sys
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from triact import _config, _kernels
from triact.alternating import (
    enumerate_alternating,
    verify_alt_transitivity,
    verify_no_alternating_cycles,
)
from triact.autos import classify_case, local_action, local_orbit, rooted_isomorphic
from triact.ball import ball, distance
from triact.core import Color, GraphGenerator, format_token, parse_token, reverse, underlying_undirected
from triact.dynamics import (
    count_ends,
    ends_scan,
    orbit_growth,
    scale_estimate,
    trofimov_tree_check,
    uniscalar_dichotomy,
)
from triact.errors import (
    BudgetExceededError,
    ColoringMismatchError,
    ContractionError,
    ParameterError,
    TriactError,
)
from triact.families import PARAMS, FamilySpec, make, parse_family
from triact.functors import arc_digraph, bs, congruence, contract, dihedral_split, power_graph, star_construction

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

SUBCOMMANDS = ("generate", "classify", "local-action", "orbit", "alt-arcs", "scale",
               "ends", "trofimov", "dichotomy", "verify-all")


# -- pipelines ---------------------------------------------------------------------------

_STAGE_RE = re.compile(r"^\s*([a-z-]+)\s*(?:\(\s*([^)]*)\s*\))?\s*$")


def _int_arg(name: str, args: Optional[str]) -> int:
    try:
        return int(args or "")
    except ValueError:
        raise ParameterError(f"{name} needs one integer argument") from None


def _no_arg(name: str, args: Optional[str]) -> None:
    if args:
        raise ParameterError(f"{name} takes no arguments")


FUNCTORS: dict[str, Callable[[GraphGenerator, Optional[str]], GraphGenerator]] = {
    "bs": lambda g, a: bs(g, _int_arg("bs", a)),
    "arc": lambda g, a: (_no_arg("arc", a), arc_digraph(g))[1],
    "star": lambda g, a: (_no_arg("star", a), star_construction(g))[1],
    "split": lambda g, a: dihedral_split(g, _int_arg("split", a)),
    "contract": lambda g, a: contract(g, congruence((a or "").strip())),
    "power": lambda g, a: power_graph(g, _int_arg("power", a)),
    "reverse": lambda g, a: (_no_arg("reverse", a), reverse(g))[1],
    "undirected": lambda g, a: (_no_arg("undirected", a), underlying_undirected(g))[1],
}


def parse_pipeline(text: str) -> GraphGenerator:
    """Build ``family(args) | functor(args) | ...`` from left to right."""
    stages = text.split("|")
    g = make(parse_family(stages[0]))
    for stage in stages[1:]:
        m = _STAGE_RE.match(stage)
        if not m or m.group(1) not in FUNCTORS:
            raise ParameterError(f"unknown pipeline stage {stage.strip()!r}; "
                                 f"choose from {', '.join(sorted(FUNCTORS))}")
        g = FUNCTORS[m.group(1)](g, m.group(2))
    return g


# -- argument handling -------------------------------------------------------------------


@dataclass
class CommandSpec:
    subcommand: str
    graph: GraphGenerator
    fmt: str
    options: dict = field(default_factory=dict)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(f"{self.prog}: error: {message}")


class _Usage(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="triact", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    def common(name: str, help: str, formats=("json", "text")) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        src = sp.add_mutually_exclusive_group(required=True)
        src.add_argument("--family", help="family id, optionally with arguments: theta or theta(1)")
        src.add_argument("--pipeline", help='e.g. "delta-p(2) | bs(1) | star"')
        for flag in ("n", "p", "s", "d"):
            sp.add_argument(f"--{flag}", type=int, help=f"family parameter {flag}")
        sp.add_argument("--format", choices=formats, default="text")
        return sp

    sp = common("generate", "extract a rooted ball", ("json", "dot", "text"))
    sp.add_argument("--radius", type=int, default=3)
    sp.add_argument("--center", help="vertex token, default the base vertex")

    sp = common("classify", "decide the local-action case")
    sp.add_argument("--radius", type=int, default=3)
    sp.add_argument("--intrinsic", action="store_true", help="ignore declared colors")

    sp = common("local-action", "permutation group on the neighbors of a vertex")
    sp.add_argument("--radius", type=int, default=3)
    sp.add_argument("--vertex")
    sp.add_argument("--intrinsic", action="store_true")

    sp = common("orbit", "orbit of a vertex under the base stabilizer")
    sp.add_argument("--radius", type=int, help="default: distance to the target plus 2")
    tgt = sp.add_mutually_exclusive_group()
    tgt.add_argument("--target", help="vertex token")
    tgt.add_argument("--line-index", type=int, default=1, help="alpha_n on the declared line")

    sp = common("alt-arcs", "alternating arcs from the base vertex")
    sp.add_argument("--length", type=int, required=True, help="arc length s")
    sp.add_argument("--first-color", choices=("red", "blue"), default="red")
    sp.add_argument("--radius", type=int, help="default: length + 4")

    sp = common("scale", "orbit growth along the declared line")
    sp.add_argument("--n-max", type=int, default=10)
    sp.add_argument("--margin", type=int, default=2)

    sp = common("ends", "count ends by deleting balls")
    sp.add_argument("--inner", type=int, help="inner radius r (with --outer: one window)")
    sp.add_argument("--outer", type=int, help="outer radius R >= 3r")
    sp.add_argument("--r-max", type=int, default=12, help="largest r in the scan")

    sp = common("trofimov", "binary trees in the distance-2 graph")
    sp.add_argument("--depth", type=int, default=5)

    sp = common("dichotomy", "orbit growth below 2^n or the tree")
    sp.add_argument("--n-max", type=int, default=6)

    sp = common("verify-all", "every applicable check")
    sp.add_argument("--radius", type=int, default=8)
    return p


def _graph(ns: argparse.Namespace) -> GraphGenerator:
    if ns.pipeline:
        return parse_pipeline(ns.pipeline)
    text = ns.family
    given = {k: getattr(ns, k) for k in ("n", "p", "s", "d") if getattr(ns, k) is not None}
    if "(" in text:
        if given:
            raise ParameterError("give family parameters either inline or as flags, not both")
        return make(parse_family(text))
    if text not in PARAMS:
        return make(parse_family(text))  # raises with the list of families
    names = [k for k, _ in PARAMS[text]]
    stray = sorted(set(given) - set(names))
    if stray:
        raise ParameterError(f"{text} takes no --{stray[0]}")
    return make(FamilySpec(text, {k: given[k] for k in names if k in given}))


def _header(argv: Sequence[str]) -> dict:
    return {
        "invocation": " ".join(["triact", *(shlex.quote(a) for a in argv)]),
        "limits": _config.budgets(),
        "backend": _kernels.BACKEND,
    }


# -- subcommands -------------------------------------------------------------------------
# each returns (document, text lines, ok)


def _generate(g, ns):
    center = parse_token(ns.center) if ns.center else None
    b = ball(g, center, ns.radius)
    if ns.format == "dot":
        return b.to_dot(), None, True
    text = [f"{g.label} ball of radius {b.radius} at {format_token(b.center)}",
            f"vertices {b.n} edges {b.n_edges}",
            "spheres " + " ".join(str(x) for x in b.sphere_sizes())]
    return b.to_dict(), text, True


def _classify(g, ns):
    c = classify_case(g, ns.radius, intrinsic=ns.intrinsic)
    return {"family": g.label, **c.to_dict()}, [str(c)], True


def _local_action(g, ns):
    v = parse_token(ns.vertex) if ns.vertex else g.base
    rep = local_action(g, v, ns.radius, colors=not ns.intrinsic)
    text = [f"order {rep.order}",
            "fixed " + (" ".join(format_token(t) for t in rep.fixed_neighbors) or "none")]
    return {"family": g.label, **rep.to_dict()}, text, True


def _orbit(g, ns):
    if ns.target:
        target = parse_token(ns.target)
    else:
        if g.line is None:
            raise ParameterError(f"{g.label} has no declared line; pass --target")
        target = g.line.alpha(ns.line_index)
    radius = ns.radius if ns.radius is not None else distance(g, g.base, target) + 2
    orb = sorted(local_orbit(g, g.base, target, radius))
    doc = {"family": g.label, "base": format_token(g.base), "target": format_token(target),
           "radius": radius, "size": len(orb), "orbit": [format_token(t) for t in orb]}
    return doc, [f"orbit size {len(orb)} at radius {radius}"], True


def _alt_arcs(g, ns):
    s = ns.length
    radius = ns.radius if ns.radius is not None else s + 4
    first = Color.RED if ns.first_color == "red" else Color.BLUE
    arcs = enumerate_alternating(g, g.base, s, first)
    trans = verify_alt_transitivity(g, radius, s)
    cycles = verify_no_alternating_cycles(g, radius, s)
    violations = [{"s": k, **a.to_dict()} for k, a in cycles.violations if a.colors[0] is first]
    orbits = trans.orbit_counts[first.label]
    doc = {"family": g.label, "s": s, "first_color": first.label, "radius": radius,
           "count": len(arcs), "orbit_count": orbits, "violations": violations}
    text = [f"arcs {len(arcs)} orbits {orbits} violations {len(violations)}"]
    return doc, text, not violations and orbits == 1


def _scale(g, ns):
    growth = orbit_growth(g, ns.n_max, ns.margin)
    est = scale_estimate(growth.orbits)
    doc = {**growth.to_dict(), "estimate": est.to_dict()}
    return doc, ["orbits " + " ".join(map(str, growth.orbits)), str(est)], True


def _ends(g, ns):
    if (ns.inner is None) != (ns.outer is None):
        raise ParameterError("--inner and --outer go together")
    if ns.inner is not None:
        e = count_ends(g, ns.inner, ns.outer)
        return {"family": g.label, **e.to_dict()}, [f"components {e.components}", str(e)], True
    census = ends_scan(g, ns.r_max)
    text = ["components " + " ".join(str(e.components) for e in census.estimates), census.verdict]
    return census.to_dict(), text, census.verdict != "inconclusive"


def _trofimov(g, ns):
    rep = trofimov_tree_check(g, ns.depth)
    if not rep.hypothesis:
        return rep.to_dict(), ["hypothesis failed"], True
    text = ["levels " + " ".join(map(str, rep.tree.levels)), "ok" if rep.ok else "FAILED"]
    return rep.to_dict(), text, rep.ok


def _dichotomy(g, ns):
    rep = uniscalar_dichotomy(g, ns.n_max)
    return rep.to_dict(), [f"{rep.branch} branch", "consistent" if rep.consistent else "INCONSISTENT"], \
        rep.consistent


def _verify_all(g, ns):
    R = ns.radius
    checks = {}
    case = classify_case(g, 3)
    checks["classify"] = {"ok": True, "case": case.label}
    if g.colored:
        cyc = verify_no_alternating_cycles(g, R, max(1, min(10, R - 2)))
        checks["no_alternating_cycles"] = {"ok": cyc.ok, **cyc.to_dict()}
        reports = [verify_alt_transitivity(g, s + 4, s) for s in range(1, max(1, R - 4) + 1)]
        checks["transitivity"] = {"ok": all(r.ok for r in reports),
                                  "reports": [r.to_dict() for r in reports]}
    census = ends_scan(g)
    checks["ends"] = {"ok": census.verdict != "inconclusive", **census.to_dict()}
    if g.expected_quotient is not None:
        kind, target = g.expected_quotient()
        r = min(R, 5)
        try:
            same = rooted_isomorphic(contract(g, congruence(kind)), target, r)
            checks["contraction"] = {"ok": same, "kind": kind, "target": target.label, "radius": r}
        except ContractionError as exc:
            checks["contraction"] = {"ok": False, "kind": kind, "error": str(exc)}
    ok = all(c["ok"] for c in checks.values())
    doc = {"family": g.label, "radius": R, "ok": ok, "checks": checks}
    text = [f"{name}: {'ok' if c['ok'] else 'FAILED'}" for name, c in checks.items()]
    return doc, text, ok


_RUNNERS = {
    "generate": _generate,
    "classify": _classify,
    "local-action": _local_action,
    "orbit": _orbit,
    "alt-arcs": _alt_arcs,
    "scale": _scale,
    "ends": _ends,
    "trofimov": _trofimov,
    "dichotomy": _dichotomy,
    "verify-all": _verify_all,
}


def run(spec: CommandSpec, argv: Sequence[str], out) -> int:
    doc, text, ok = _RUNNERS[spec.subcommand](spec.graph, argparse.Namespace(**spec.options,
                                                                            format=spec.fmt))
    if spec.fmt == "dot":
        out.write(doc)
    elif spec.fmt == "json":
        out.write(json.dumps({**doc, **_header(argv)}, sort_keys=True, indent=2) + "\n")
    else:
        out.write("\n".join(text) + "\n")
    return EXIT_OK if ok else EXIT_VIOLATION


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        ns = build_parser().parse_args(argv)
    except _Usage as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    opts = {k: v for k, v in vars(ns).items() if k not in ("subcommand", "format")}
    try:
        spec = CommandSpec(ns.subcommand, _graph(ns), ns.format, opts)
        return run(spec, argv, out)
    except BudgetExceededError as exc:
        err.write(f"triact: budget exceeded: {exc}\n")
        return EXIT_BUDGET
    except (ColoringMismatchError, ContractionError) as exc:
        err.write(f"triact: {exc}\n")
        return EXIT_VIOLATION
    except (TriactError, ValueError) as exc:
        err.write(f"triact: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
