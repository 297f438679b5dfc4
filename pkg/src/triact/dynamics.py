"""Orbit growth along declared lines, scale estimates, ends and the Γ_2 tree."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from triact import _kernels
from triact.autos import _point_orbit, _Prepared, tuple_orbit
from triact.ball import Ball, ball
from triact.core import GraphGenerator, Token, format_token
from triact.errors import BudgetExceededError, ParameterError, PreconditionError, UnsupportedError

DEFAULT_MARGIN = 2


def _line(g: GraphGenerator):
    if g.line is None:
        raise UnsupportedError(f"{g.label} has no declared line")
    return g.line


@dataclass(frozen=True)
class OrbitGrowth:
    family: str
    orbits: tuple  # o_1 .. o_N
    distances: tuple  # d(alpha_0, alpha_n)
    radii: tuple  # ball radius used for each n

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "orbits": list(self.orbits),
            "distances": list(self.distances),
            "radii": list(self.radii),
        }


def _line_ball(g: GraphGenerator, center: Token, targets: list[Token], margin: int) -> Ball:
    """A ball around ``center`` containing every target with ``margin`` to spare."""
    line = _line(g)
    reach = max(1, line.step * len(targets))
    b = ball(g, center, reach)
    while any(t not in b for t in targets):
        reach *= 2
        b = ball(g, center, reach)
    need = max(b.distance(t) for t in targets) + margin
    return b if need == b.radius else ball(g, center, need)


def orbit_growth(g: GraphGenerator, n_max: int, margin: int = DEFAULT_MARGIN,
                 radius_policy: Optional[Callable[[int, int], int]] = None) -> OrbitGrowth:
    """``o_n = |alpha_n G_{alpha_0}|`` for ``n = 1..n_max`` on ball surrogates.

    By default ``alpha_n`` is taken in ``B(alpha_0, d_n + margin)`` where
    ``d_n = d(alpha_0, alpha_n)``. ``radius_policy(n, d_n)`` overrides this;
    it must return at least ``d_n``.
    """
    if n_max < 1:
        raise ParameterError("n_max must be positive")
    line = _line(g)
    center = line.alpha(0)
    targets = [line.alpha(n) for n in range(1, n_max + 1)]
    policy = radius_policy or (lambda n, d: d + margin)
    probe = _line_ball(g, center, targets, 0)
    dists = [probe.distance(t) for t in targets]
    radii = [policy(n, d) for n, d in zip(range(1, n_max + 1), dists)]
    if any(r < d for r, d in zip(radii, dists)):
        raise ParameterError("radius policy must cover each target")
    big = ball(g, center, max(radii)) if max(radii) > probe.radius else probe
    orbits = []
    for t, r in zip(targets, radii):
        b = big.restrict(r)
        ctx = _Prepared(b)
        orb, _ = _point_orbit(ctx, [], b.index(t))
        orbits.append(len(orb))
    return OrbitGrowth(g.label, tuple(orbits), tuple(dists), tuple(radii))


# -- scale ------------------------------------------------------------------------------


@dataclass(frozen=True)
class ScaleEstimate:
    orbits: tuple
    ratios: tuple  # Fractions o_{n+1} / o_n
    roots: tuple  # o_n ** (1/n)
    verdict: str  # ratio-stable, bounded, inconclusive
    value: Optional[int] = None  # ratio for ratio-stable, C for bounded

    @property
    def scale(self) -> Optional[int]:
        if self.verdict == "bounded":
            return 1
        if self.verdict == "ratio-stable":
            return self.value
        return None

    def __str__(self) -> str:
        return self.verdict if self.value is None else f"{self.verdict}({self.value})"

    def to_dict(self) -> dict:
        return {
            "orbits": list(self.orbits),
            "ratios": [str(r) for r in self.ratios],
            "roots": [round(x, 12) for x in self.roots],
            "verdict": self.verdict,
            "value": self.value,
            "scale": self.scale,
        }


def scale_estimate(orbits: Sequence[int]) -> ScaleEstimate:
    """Bounded if the last ``ceil(N/3)`` values agree; ratio-stable if the last three ratios
    are one integer; otherwise inconclusive."""
    o = tuple(int(x) for x in orbits)
    if not o or any(x < 1 for x in o):
        raise ParameterError("orbit sizes must be a nonempty sequence of positive integers")
    ratios = tuple(Fraction(b, a) for a, b in zip(o, o[1:]))
    roots = tuple(x ** (1.0 / n) for n, x in enumerate(o, start=1))
    tail = o[-math.ceil(len(o) / 3):]
    if len(set(tail)) == 1:
        return ScaleEstimate(o, ratios, roots, "bounded", max(o))
    last = ratios[-3:]
    if len(last) == 3 and len(set(last)) == 1 and last[0].denominator == 1:
        return ScaleEstimate(o, ratios, roots, "ratio-stable", int(last[0]))
    return ScaleEstimate(o, ratios, roots, "inconclusive")


# -- ends -------------------------------------------------------------------------------


@dataclass(frozen=True)
class EndsEstimate:
    r: int
    R: int
    components: int
    verdict: str  # one, two, many, inconclusive
    k: Optional[int] = None

    def __str__(self) -> str:
        return f"many({self.k})" if self.verdict == "many" else self.verdict

    def to_dict(self) -> dict:
        return {"r": self.r, "R": self.R, "components": self.components,
                "verdict": str(self)}


def _verdict(count: int) -> tuple[str, Optional[int]]:
    if count == 1:
        return "one", None
    if count == 2:
        return "two", None
    if count > 2:
        return "many", count
    return "inconclusive", None


def annulus_components(b: Ball, r: int) -> int:
    """Components of ``{depth >= r}`` in the ball that reach the outer sphere."""
    mask = b.depth >= r
    labels = _kernels.label_components(b.indptr, b.indices, mask)
    outer = labels[b.depth == b.radius]
    return int(np.unique(outer[outer >= 0]).size)


def count_ends(g: GraphGenerator, r: int = 3, R: int = 12) -> EndsEstimate:
    """Delete the vertices closer than ``r`` to the base; count what reaches depth ``R``."""
    if r < 1 or R < 3 * r:
        raise ParameterError("count_ends needs R >= 3r >= 3")
    b = ball(g, g.base, R)
    c = annulus_components(b, r)
    verdict, k = _verdict(c)
    return EndsEstimate(r, R, c, verdict, k)


ENDS_PAIRS = ((2, 8), (3, 9), (3, 12))


@dataclass(frozen=True)
class EndsCensus:
    family: str
    estimates: tuple
    verdict: str

    def to_dict(self) -> dict:
        return {"family": self.family, "verdict": self.verdict,
                "estimates": [e.to_dict() for e in self.estimates]}


def ends_census(g: GraphGenerator, pairs: Sequence[tuple[int, int]] = ENDS_PAIRS) -> EndsCensus:
    """Ends verdict across several ``(r, R)`` windows.

    ``one`` and ``two`` need every window to agree; ``many`` needs counts above
    two that grow with ``r``.
    """
    ests = tuple(count_ends(g, r, R) for r, R in pairs)
    counts = [e.components for e in ests]
    if all(c == 1 for c in counts):
        verdict = "one"
    elif all(c == 2 for c in counts):
        verdict = "two"
    elif all(c > 2 for c in counts):
        by_r: dict = {}
        for e in ests:
            by_r.setdefault(e.r, set()).add(e.components)
        rs = sorted(by_r)
        growing = all(max(by_r[a]) < min(by_r[b]) for a, b in zip(rs, rs[1:]))
        verdict = "many" if growing or len(rs) == 1 else "inconclusive"
    else:
        verdict = "inconclusive"
    return EndsCensus(g.label, ests, verdict)


def ends_scan(g: GraphGenerator, r_max: int = 12, factor: int = 3, tail: int = 3) -> EndsCensus:
    """Windows ``(r, factor * r)`` for ``r = 1..r_max`` until the vertex budget stops it.

    A ball that is narrow compared with the graph does not separate its ends,
    so the verdict is read from the last ``tail`` windows only.
    """
    ests = []
    for r in range(1, r_max + 1):
        try:
            ests.append(count_ends(g, r, factor * r))
        except BudgetExceededError:
            break
    last = ests[-tail:]
    counts = [e.components for e in last]
    if len(last) < tail:
        verdict = "inconclusive"
    elif all(c == 1 for c in counts):
        verdict = "one"
    elif all(c == 2 for c in counts):
        verdict = "two"
    elif all(c > 2 for c in counts) and all(a < b for a, b in zip(counts, counts[1:])):
        verdict = "many"
    else:
        verdict = "inconclusive"
    return EndsCensus(g.label, tuple(ests), verdict)


# -- the rooted binary tree inside Γ_2 ------------------------------------------------------


@dataclass(frozen=True)
class TreeSide:
    root: Token
    levels: tuple  # sizes
    edges: int
    root_degree: int
    internal_degrees: tuple  # sorted distinct degrees of levels 1..N-1
    leaf_degrees: tuple
    acyclic: bool
    in_power_graph: bool
    vertices: frozenset = field(repr=False, default=frozenset())


@dataclass(frozen=True)
class TrofimovReport:
    family: str
    depth: int
    hypothesis: bool  # o_n = 2^n for n <= depth
    orbit_sizes: tuple
    tree: Optional[TreeSide] = None
    mirror: Optional[TreeSide] = None
    disjoint: Optional[bool] = None
    roots_adjacent: Optional[bool] = None

    @property
    def ok(self) -> bool:
        if not self.hypothesis:
            return False
        t, m = self.tree, self.mirror
        n = self.depth
        return (
            all(s.levels == tuple(2 ** i for i in range(n + 1)) for s in (t, m))
            and all(s.root_degree == 2 and s.acyclic and s.in_power_graph for s in (t, m))
            and all(set(s.internal_degrees) <= {3} for s in (t, m))
            and bool(self.disjoint and self.roots_adjacent)
        )

    def to_dict(self) -> dict:
        out = {
            "family": self.family,
            "depth": self.depth,
            "hypothesis": "holds" if self.hypothesis else "failed",
            "orbit_sizes": list(self.orbit_sizes),
            "ok": self.ok,
        }
        for name, side in (("tree", self.tree), ("mirror", self.mirror)):
            if side is not None:
                out[name] = {
                    "root": format_token(side.root),
                    "levels": list(side.levels),
                    "edges": side.edges,
                    "root_degree": side.root_degree,
                    "internal_degrees": list(side.internal_degrees),
                    "leaf_degrees": list(side.leaf_degrees),
                    "acyclic": side.acyclic,
                    "in_power_graph": side.in_power_graph,
                }
        if self.disjoint is not None:
            out["disjoint"] = self.disjoint
            out["roots_adjacent"] = self.roots_adjacent
        return out


def _tree_side(g: GraphGenerator, ray: list[Token], margin: int) -> TreeSide:
    """Orbits of ``ray[n]`` and of ``{ray[n], ray[n+1]}`` under the stabilizer of ``ray[0]``."""
    n_max = len(ray) - 1
    b = _line_ball(g, ray[0], ray[1:], margin)
    ctx = _Prepared(b)
    idx = [b.index(t) for t in ray]
    levels = [[idx[0]]]
    for t in idx[1:]:
        orb, _ = _point_orbit(ctx, [], t)
        levels.append(orb)
    edges: list[tuple[int, int]] = []
    for n in range(n_max):
        d = _dist_in_ball(b, idx[n], idx[n + 1])
        upper = set(levels[n + 1])
        cands = [(x, y) for x in levels[n] for y in _near(b, x, d) if y in upper
                 and _dist_in_ball(b, x, y) == d]
        orbit, _ = tuple_orbit(ctx, (idx[n], idx[n + 1]), cands)
        edges.extend(orbit)
    deg: dict[int, int] = {}
    for x, y in edges:
        deg[x] = deg.get(x, 0) + 1
        deg[y] = deg.get(y, 0) + 1
    verts = [v for lv in levels for v in lv]
    acyclic = _is_forest(verts, edges) and len(edges) == len(verts) - 1
    in_g2 = all(_dist_in_ball(b, x, y) <= 2 for x, y in edges)
    return TreeSide(
        root=ray[0],
        levels=tuple(len(lv) for lv in levels),
        edges=len(edges),
        root_degree=deg.get(idx[0], 0),
        internal_degrees=tuple(sorted({deg.get(v, 0) for lv in levels[1:-1] for v in lv})),
        leaf_degrees=tuple(sorted({deg.get(v, 0) for v in levels[-1]})),
        acyclic=acyclic,
        in_power_graph=in_g2,
        vertices=frozenset(b.tokens[v] for v in verts),
    )


def _near(b: Ball, x: int, d: int) -> set[int]:
    seen = {x}
    frontier = [x]
    for _ in range(d):
        frontier = [int(w) for v in frontier for w in b.neighbors(v) if int(w) not in seen]
        seen.update(frontier)
    return seen


def _dist_in_ball(b: Ball, x: int, y: int) -> int:
    if x == y:
        return 0
    seen = {x}
    frontier = [x]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for v in frontier:
            for w in b.neighbors(v):
                w = int(w)
                if w == y:
                    return d
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return 1 << 30


def _is_forest(verts: list[int], edges: list[tuple[int, int]]) -> bool:
    parent = {v: v for v in verts}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for x, y in edges:
        rx, ry = find(x), find(y)
        if rx == ry:
            return False
        parent[rx] = ry
    return True


def trofimov_tree_check(g: GraphGenerator, depth: int, margin: int = DEFAULT_MARGIN) -> TrofimovReport:
    """Build the rooted binary trees in Γ_2 from both halves of the declared line."""
    if depth < 1:
        raise ParameterError("depth must be positive")
    line = _line(g)
    if not line.alternating:
        raise PreconditionError(f"{g.label} has no alternating line")
    growth = orbit_growth(g, depth, margin)
    hyp = all(o == 2 ** n for n, o in enumerate(growth.orbits, start=1))
    if not hyp:
        return TrofimovReport(g.label, depth, False, growth.orbits)
    tree = _tree_side(g, [line.alpha(n) for n in range(depth + 1)], margin)
    mirror = _tree_side(g, [line.alpha(-1 - n) for n in range(depth + 1)], margin)
    disjoint = not (tree.vertices & mirror.vertices)
    b = ball(g, line.alpha(0), 2)
    adjacent = line.alpha(-1) in b
    return TrofimovReport(g.label, depth, True, growth.orbits, tree, mirror, disjoint, adjacent)


# -- the dichotomy ------------------------------------------------------------------------


@dataclass(frozen=True)
class DichotomyReport:
    family: str
    orbits: tuple
    branch: str  # "inequality" or "equality"
    witness: Optional[int]  # first n with o_n < 2^n
    ends: Optional[EndsCensus] = None
    tree: Optional[TrofimovReport] = None

    @property
    def consistent(self) -> bool:
        if self.branch == "inequality":
            return self.ends is not None and self.ends.verdict == "two"
        return self.tree is not None and self.tree.ok

    def to_dict(self) -> dict:
        out = {
            "family": self.family,
            "orbits": list(self.orbits),
            "branch": self.branch,
            "witness": self.witness,
            "consistent": self.consistent,
        }
        if self.ends is not None:
            out["ends"] = self.ends.to_dict()
        if self.tree is not None:
            out["tree"] = self.tree.to_dict()
        return out


def uniscalar_dichotomy(g: GraphGenerator, n_max: int, r_max: int = 12) -> DichotomyReport:
    """Either some ``o_n < 2^n`` (expect two ends) or ``o_n = 2^n`` throughout (expect the tree)."""
    growth = orbit_growth(g, n_max)
    witness = next((n for n, o in enumerate(growth.orbits, start=1) if o < 2 ** n), None)
    if witness is not None:
        return DichotomyReport(g.label, growth.orbits, "inequality", witness,
                               ends=ends_scan(g, r_max))
    return DichotomyReport(g.label, growth.orbits, "equality", None,
                           tree=trofimov_tree_check(g, n_max))
