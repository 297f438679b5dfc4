"""Alternating s-arcs in red/blue colored trivalent graphs.

Naming follows the usual convention for arcs in a stabilizer argument: a
*predecessor* of ``S = (a0..as)`` drops the head and extends past the tail,
``(a1..as, x)``; a *successor* extends before the head and drops the tail,
``(y, a0..a(s-1))``. The two relations are mutually inverse.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from triact import _config
from triact.autos import _Prepared, tuple_orbits
from triact.ball import Ball, ball
from triact.core import Color, GraphGenerator, Token, format_token
from triact.errors import BudgetExceededError, ParameterError, PreconditionError

_LETTER = {Color.RED: "r", Color.BLUE: "b"}


@dataclass(frozen=True, order=True)
class AltArc:
    vertices: tuple
    colors: tuple  # Color of (v[i], v[i+1])

    def __post_init__(self):
        if len(self.colors) != len(self.vertices) - 1 or not self.colors:
            raise ParameterError("an alternating s-arc needs s >= 1 colored arcs")
        for a, b in zip(self.colors, self.colors[1:]):
            if a == b:
                raise ParameterError("consecutive arcs must differ in color")
        for i in range(1, len(self.vertices) - 1):
            if self.vertices[i - 1] == self.vertices[i + 1]:
                raise ParameterError("an s-arc cannot backtrack")

    @property
    def s(self) -> int:
        return len(self.colors)

    @property
    def head(self) -> Token:
        return self.vertices[0]

    @property
    def tail(self) -> Token:
        return self.vertices[-1]

    @property
    def type(self) -> str:
        return _LETTER[self.colors[0]] + _LETTER[self.colors[-1]]

    def to_dict(self) -> dict:
        return {
            "vertices": [format_token(v) for v in self.vertices],
            "colors": [c.label for c in self.colors],
            "type": self.type,
        }


def reverse_arc(arc: AltArc) -> AltArc:
    return AltArc(arc.vertices[::-1], arc.colors[::-1])


def _require_colored(g: GraphGenerator) -> None:
    if not g.colored:
        raise PreconditionError(f"{g.label} has no red/blue coloring")


def _colored_nbrs(g: GraphGenerator, v: Token, color: Color) -> list[Token]:
    return [w for w, d in g.neighbors(v) if d.color is color]


def _other(c: Color) -> Color:
    return Color.BLUE if c is Color.RED else Color.RED


def enumerate_alternating(g: GraphGenerator, head: Token, s: int, first_color: Color) -> list[AltArc]:
    """All alternating s-arcs from ``head`` whose first arc has ``first_color``, sorted."""
    _require_colored(g)
    if s < 1:
        raise ParameterError("s must be at least 1")
    first_color = Color(first_color)
    if first_color is Color.NONE:
        raise ParameterError("first_color must be red or blue")
    limit = _config.vertex_budget()
    out: list[AltArc] = []
    colors = tuple(first_color if i % 2 == 0 else _other(first_color) for i in range(s))

    def walk(path: list):
        if len(path) == s + 1:
            out.append(AltArc(tuple(path), colors))
            if len(out) > limit:
                raise BudgetExceededError(f"more than {limit} alternating {s}-arcs")
            return
        for w in _colored_nbrs(g, path[-1], colors[len(path) - 1]):
            if len(path) >= 2 and w == path[-2]:
                continue
            path.append(w)
            walk(path)
            path.pop()

    walk([head])
    return sorted(out)


def _extend_tail(g: GraphGenerator, arc: AltArc, steps: int) -> Iterator[AltArc]:
    """Alternating (s + steps)-arcs extending ``arc`` past its tail."""
    frontier = [(list(arc.vertices), list(arc.colors))]
    for _ in range(steps):
        nxt = []
        for verts, cols in frontier:
            c = _other(cols[-1])
            for w in _colored_nbrs(g, verts[-1], c):
                if w != verts[-2]:
                    nxt.append((verts + [w], cols + [c]))
        frontier = nxt
    for verts, cols in frontier:
        yield AltArc(tuple(verts), tuple(cols))


def predecessors(g: GraphGenerator, arc: AltArc, step: int = 1) -> list[AltArc]:
    """Shift forward by ``step`` (1 or 2): drop head arcs, extend past the tail."""
    if step not in (1, 2):
        raise ParameterError("step must be 1 or 2")
    out = {AltArc(e.vertices[step:], e.colors[step:]) for e in _extend_tail(g, arc, step)}
    return sorted(out)


def successors(g: GraphGenerator, arc: AltArc, step: int = 1) -> list[AltArc]:
    """Shift backward by ``step``: extend before the head, drop tail arcs."""
    return sorted(reverse_arc(p) for p in predecessors(g, reverse_arc(arc), step))


def two_predecessors(g: GraphGenerator, arc: AltArc) -> list[AltArc]:
    return predecessors(g, arc, 2)


def two_successors(g: GraphGenerator, arc: AltArc) -> list[AltArc]:
    return successors(g, arc, 2)


# -- whole-region enumeration ---------------------------------------------------------


def arcs_in_ball(g: GraphGenerator, b: Ball, s: int, max_depth: Optional[int] = None,
                 types: Optional[set] = None) -> list[AltArc]:
    """Alternating s-arcs with every vertex at depth <= ``max_depth`` (default: the radius)."""
    max_depth = b.radius if max_depth is None else max_depth
    inside = {b.tokens[i] for i in range(b.n) if b.depth[i] <= max_depth}
    out = []
    for v in sorted(inside):
        for c in (Color.RED, Color.BLUE):
            for a in enumerate_alternating(g, v, s, c):
                if all(x in inside for x in a.vertices) and (types is None or a.type in types):
                    out.append(a)
    return out


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra

    def classes(self, items) -> list[list]:
        groups: dict = {}
        for x in items:
            groups.setdefault(self.find(x), []).append(x)
        return sorted(sorted(v) for v in groups.values())


@dataclass(frozen=True)
class AccessibilityReport:
    family: str
    radius: int
    s: int
    two_step: bool
    types: tuple
    region_arcs: int
    classes: int  # classes met by arcs of the region
    classes_up_to_reversal: int
    class_sizes: tuple

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "radius": self.radius,
            "s": self.s,
            "two_step": self.two_step,
            "types": list(self.types),
            "region_arcs": self.region_arcs,
            "classes": self.classes,
            "classes_up_to_reversal": self.classes_up_to_reversal,
            "class_sizes": list(self.class_sizes),
        }


def accessibility_classes(g: GraphGenerator, radius: int, s: int, two_step: bool = False,
                          types: Optional[set] = None) -> AccessibilityReport:
    """Accessibility classes of alternating s-arcs near the base vertex.

    Moves may use any arc inside ``B(base, radius)``; classes are reported for
    the arcs inside ``B(base, radius - s - 1)``. A class can split here and
    reconnect outside the ball, so counts are upper bounds.
    """
    _require_colored(g)
    inner = radius - s - 1
    if inner < 0:
        raise ParameterError("radius must be at least s + 1")
    b = ball(g, g.base, radius)
    step = 2 if two_step else 1
    arcs = arcs_in_ball(g, b, s, types=types)
    present = set(arcs)
    uf = _UnionFind(arcs)
    for a in arcs:
        for p in predecessors(g, a, step):
            if p in present:
                uf.union(a, p)
    region = [a for a in arcs if all(b.depth[b.index(v)] <= inner for v in a.vertices)]
    met = {uf.find(a) for a in region}
    rev = _UnionFind(sorted(met))
    for a in region:
        ra = reverse_arc(a)
        if ra in present:
            rev.union(uf.find(a), uf.find(ra))
    sizes = sorted((sum(1 for a in region if uf.find(a) == root) for root in met), reverse=True)
    return AccessibilityReport(
        family=g.label,
        radius=radius,
        s=s,
        two_step=two_step,
        types=tuple(sorted(types)) if types else ("bb", "br", "rb", "rr"),
        region_arcs=len(region),
        classes=len(met),
        classes_up_to_reversal=len({rev.find(r) for r in met}),
        class_sizes=tuple(sizes),
    )


# -- checks -------------------------------------------------------------------------------


@dataclass(frozen=True)
class CycleReport:
    family: str
    radius: int
    s_max: int
    checked: int
    violations: tuple  # (s, arc) pairs

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "radius": self.radius,
            "s_max": self.s_max,
            "checked": self.checked,
            "violations": [{"s": s, **a.to_dict()} for s, a in self.violations],
        }


def verify_no_alternating_cycles(g: GraphGenerator, radius: int, s_max: int) -> CycleReport:
    """Head and tail of every alternating s-arc (s <= s_max) are distinct and non-adjacent.

    Heads range over ``B(base, radius - s)`` so the whole arc lies in the ball.
    """
    _require_colored(g)
    b = ball(g, g.base, radius)
    checked = 0
    bad = []
    for s in range(1, s_max + 1):
        heads = [b.tokens[i] for i in range(b.n) if b.depth[i] <= radius - s]
        for h in heads:
            for c in (Color.RED, Color.BLUE):
                for a in enumerate_alternating(g, h, s, c):
                    checked += 1
                    if s >= 2 and (a.head == a.tail or a.tail in {w for w, _ in g.neighbors(a.head)}):
                        bad.append((s, a))
    return CycleReport(g.label, radius, s_max, checked, tuple(bad))


@dataclass(frozen=True)
class TransitivityReport:
    family: str
    radius: int
    s: int
    arc_counts: dict  # first color label -> arcs from base
    orbit_counts: dict

    @property
    def ok(self) -> bool:
        return all(v == 1 for v in self.orbit_counts.values())

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "radius": self.radius,
            "s": self.s,
            "count": {k: self.arc_counts[k] for k in sorted(self.arc_counts)},
            "orbit_count": {k: self.orbit_counts[k] for k in sorted(self.orbit_counts)},
        }


def _arc_indices(b: Ball, arcs: list[AltArc]) -> list[tuple]:
    return [tuple(b.index(v) for v in a.vertices) for a in arcs]


def verify_alt_transitivity(g: GraphGenerator, radius: int, s: int) -> TransitivityReport:
    """Orbits of center-fixing ball automorphisms on alternating s-arcs from the base."""
    _require_colored(g)
    if radius < s:
        raise ParameterError("radius must be at least s")
    b = ball(g, g.base, radius)
    ctx = _Prepared(b)
    counts, orbits = {}, {}
    for c in (Color.RED, Color.BLUE):
        arcs = enumerate_alternating(g, g.base, s, c)
        counts[c.label] = len(arcs)
        orbits[c.label] = len(tuple_orbits(ctx, _arc_indices(b, arcs)))
    return TransitivityReport(g.label, radius, s, counts, orbits)


def line_window(g: GraphGenerator, start: int, length: int) -> AltArc:
    """The alternating arc ``vertex(start) .. vertex(start + length)`` of the declared line."""
    line = g.line
    if line is None or not line.alternating:
        raise PreconditionError(f"{g.label} has no alternating line")
    verts = line.window(start, start + length)
    cols = []
    for u, w in zip(verts, verts[1:]):
        (d,) = [d for x, d in g.neighbors(u) if x == w]
        cols.append(d.color)
    return AltArc(verts, tuple(cols))
