"""Graph-to-graph constructions on neighbor oracles.

Every construction returns a new lazy :class:`GraphGenerator`; nothing is
enumerated globally. Composite oracles are memoized because they query their
inputs repeatedly.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Optional

from triact import _config
from triact.ball import ball as _ball
from triact.core import (
    BLUE,
    IN,
    OUT,
    PLAIN,
    RED,
    Color,
    DeclaredLine,
    EdgeDecoration,
    GraphGenerator,
    Orientation,
    Token,
    cached_oracle,
    format_token,
)
from triact.errors import (
    BudgetExceededError,
    ContractionError,
    InvalidTokenError,
    ParameterError,
    PreconditionError,
)


def _successors(g: GraphGenerator, v: Token) -> list[Token]:
    """Vertices reachable by one arc: out-neighbors, or all neighbors if undirected."""
    if g.oriented:
        return [w for w, d in g.oracle(v) if d.orientation is Orientation.FORWARD]
    return [w for w, _ in g.oracle(v)]


def _predecessors(g: GraphGenerator, v: Token) -> list[Token]:
    if g.oriented:
        return [w for w, d in g.oracle(v) if d.orientation is Orientation.BACKWARD]
    return [w for w, _ in g.oracle(v)]


# -- s-arc digraphs -----------------------------------------------------------


def bs(g: GraphGenerator, s: int) -> GraphGenerator:
    """The s-arc digraph: vertices are s-arcs, arcs join one-step overlaps.

    ``(a0..as) -> (a1..as, x)`` whenever ``x`` follows ``as`` and ``x != a(s-1)``.
    ``bs(g, 0)`` is ``g`` itself.
    """
    if s < 0:
        raise ParameterError("s must be non-negative")
    if s == 0:
        return g

    def is_valid(t) -> bool:
        if not isinstance(t, tuple) or len(t) != s + 1:
            return False
        try:
            if not g.is_valid(t[0]):
                return False
            for i in range(s):
                if t[i + 1] not in _successors(g, t[i]):
                    return False
                if i >= 1 and t[i + 1] == t[i - 1]:
                    return False
        except (InvalidTokenError, TypeError):
            return False
        return True

    def oracle(t):
        out = [(t[1:] + (x,), OUT) for x in _successors(g, t[-1]) if x != t[-2]]
        inn = [((y,) + t[:-1], IN) for y in _predecessors(g, t[0]) if y != t[1]]
        return tuple(out + inn)

    if g.oriented:
        out_deg, in_deg = g.out_degree, g.in_degree
    else:
        out_deg = in_deg = g.degree - 1

    line = None
    if g.line is not None:
        src = g.line.vertex
        line = DeclaredLine(lambda k: tuple(src(k + i) for i in range(s + 1)))
        base = line.vertex(0)
    else:
        walk = [g.base]
        for _ in range(s):
            nxt = [x for x in _successors(g, walk[-1]) if len(walk) < 2 or x != walk[-2]]
            if not nxt:
                raise PreconditionError(f"no {s}-arc starts at the base of {g.label}")
            walk.append(nxt[0])
        base = tuple(walk)

    return GraphGenerator(
        family=f"{g.label} | bs({s})",
        oracle=cached_oracle(oracle),
        base=base,
        degree=(out_deg or 0) + (in_deg or 0),
        oriented=True,
        in_degree=in_deg,
        out_degree=out_deg,
        is_valid=is_valid,
        line=line,
    )


def arc_digraph(g: GraphGenerator) -> GraphGenerator:
    """Vertices are arcs of ``g``; ``((a, b), (c, d))`` is an arc iff ``b == c`` and ``a != d``."""
    return bs(g, 1)


# -- vertex doubling ------------------------------------------------------------


def star_construction(delta: GraphGenerator) -> GraphGenerator:
    """Double every vertex ``x`` of a 2-in 2-out digraph into ``(x, -1)`` and ``(x, +1)``.

    ``{(x,-1), (x,+1)}`` is red; ``{(x,+1), (y,-1)}`` is blue for every arc ``x -> y``.
    """
    if not delta.oriented or delta.in_degree != 2 or delta.out_degree != 2:
        raise PreconditionError(
            f"star construction needs in- and out-degree 2, got {delta.label} "
            f"(in={delta.in_degree}, out={delta.out_degree})"
        )

    def is_valid(t) -> bool:
        return isinstance(t, tuple) and len(t) == 2 and t[1] in (-1, 1) and delta.is_valid(t[0])

    def oracle(t):
        x, sgn = t
        nb = delta.oracle(x)
        want = Orientation.BACKWARD if sgn < 0 else Orientation.FORWARD
        blues = [((y, -sgn), BLUE) for y, d in nb if d.orientation is want]
        if len(blues) != 2:
            raise PreconditionError(f"{format_token(x)} has {len(blues)} arcs on one side, expected 2")
        return (((x, -sgn), RED), *blues)

    line = None
    if delta.line is not None:
        dv = delta.line.vertex
        line = DeclaredLine(lambda k: (dv(k // 2), -1 if k % 2 == 0 else 1), alternating=True)

    return GraphGenerator(
        family=f"{delta.label} | star",
        oracle=cached_oracle(oracle),
        base=(delta.base, -1),
        degree=3,
        colored=True,
        is_valid=is_valid,
        line=line,
        polarity=lambda t: t[1],
        expected_quotient=lambda: ("red-edge-pairs", delta),
    )


# -- dihedral splitting -----------------------------------------------------------


def dihedral_split(g: GraphGenerator, d: int) -> GraphGenerator:
    """Replace each vertex of a d-regular graph by a blue d-cycle of its out-arcs.

    The cyclic order of each neighbor list is the rotation. Arc ``(a, b)`` is red
    to ``(b, a)`` and blue to ``(a, r(b))`` and ``(a, r^-1(b))``.
    """
    if d < 3:
        raise ParameterError("dihedral split needs d >= 3")
    if g.oriented or g.degree != d:
        raise PreconditionError(f"{g.label} is not an undirected {d}-regular graph")

    def rotation(a) -> list:
        nb = [w for w, _ in g.oracle(a)]
        if len(nb) != d:
            raise PreconditionError(f"{format_token(a)} has degree {len(nb)}, expected {d}")
        return nb

    def is_valid(t) -> bool:
        try:
            return (isinstance(t, tuple) and len(t) == 2 and g.is_valid(t[0])
                    and t[1] in rotation(t[0]))
        except (InvalidTokenError, TypeError):
            return False

    def oracle(t):
        a, b = t
        nb = rotation(a)
        i = nb.index(b)
        return (((b, a), RED), ((a, nb[(i + 1) % d]), BLUE), ((a, nb[(i - 1) % d]), BLUE))

    x0 = g.base
    x1 = rotation(x0)[0]
    walk = {0: x0, 1: x1}

    def x(k: int):
        # x(k+1) = r_{x(k)}(x(k-1)); extended in both directions on demand
        if k not in walk:
            if k > 0:
                prev, cur = x(k - 2), x(k - 1)
                nb = rotation(cur)
                walk[k] = nb[(nb.index(prev) + 1) % d]
            else:
                cur, nxt = x(k + 1), x(k + 2)
                nb = rotation(cur)
                walk[k] = nb[(nb.index(nxt) - 1) % d]
        return walk[k]

    def vertex(k: int):
        i, side = divmod(k, 2)
        return (x(i), x(i + 1)) if side == 0 else (x(i + 1), x(i))

    return GraphGenerator(
        family=f"{g.label} | split({d})",
        oracle=cached_oracle(oracle),
        base=(x0, x1),
        degree=3,
        colored=True,
        is_valid=is_valid,
        line=DeclaredLine(vertex, alternating=True),
        expected_quotient=lambda: ("blue-components", g),
    )


# -- quotients ----------------------------------------------------------------------


@dataclass(frozen=True)
class CongruenceSpec:
    """A partition of the vertex set into finite blocks.

    ``block_of`` maps a vertex to its block representative and ``members``
    lists a block from its representative. The built-in kinds derive both
    from edge colors.
    """

    kind: str
    block_of: Optional[Callable[[Token], Token]] = None
    members: Optional[Callable[[Token], tuple]] = None

    def __post_init__(self):
        if self.kind not in ("red-edge-pairs", "blue-components", "explicit"):
            raise ParameterError(f"unknown congruence kind {self.kind!r}")
        if self.kind == "explicit" and (self.block_of is None or self.members is None):
            raise ParameterError("explicit congruences need block_of and members")


RED_EDGE_PAIRS = CongruenceSpec("red-edge-pairs")
BLUE_COMPONENTS = CongruenceSpec("blue-components")


def explicit(block_of: Callable[[Token], Token], members: Callable[[Token], tuple]) -> CongruenceSpec:
    return CongruenceSpec("explicit", block_of, members)


def congruence(kind: str) -> CongruenceSpec:
    return CongruenceSpec(kind)


def _blocks(g: GraphGenerator, spec: CongruenceSpec):
    """Return memoized ``(block_of, members)`` for ``spec`` on ``g``."""
    if spec.kind == "explicit":
        return spec.block_of, spec.members

    if spec.kind == "red-edge-pairs":
        if not g.colored:
            raise PreconditionError(f"{g.label} carries no red edges")

        def component(v):
            reds = [w for w, d in g.oracle(v) if d.color is Color.RED]
            if len(reds) != 1:
                raise ContractionError(f"{format_token(v)} has {len(reds)} red edges")
            return tuple(sorted((v, reds[0])))
    else:
        if not g.colored:
            raise PreconditionError(f"{g.label} carries no blue edges")
        limit = _config.block_budget()

        def component(v):
            seen = {v}
            queue = deque([v])
            while queue:
                u = queue.popleft()
                for w, d in g.oracle(u):
                    if d.color is Color.BLUE and w not in seen:
                        seen.add(w)
                        if len(seen) > limit:
                            raise BudgetExceededError(
                                f"blue component of {format_token(v)} exceeds {limit} vertices"
                            )
                        queue.append(w)
            return tuple(sorted(seen))

    component = cached_oracle(component)

    def block_of(v):
        return component(v)[0]

    def members(rep):
        return component(rep)

    return block_of, members


def contract(g: GraphGenerator, spec: CongruenceSpec) -> GraphGenerator:
    """Quotient by the blocks of ``spec``; loops dropped, parallel edges merged.

    With red-edge-pair blocks on a vertex-doubled graph the quotient is a
    digraph: the blue edge ``{(x,+1), (y,-1)}`` becomes the arc ``x -> y``.
    """
    block_of, members = _blocks(g, spec)
    directed = spec.kind == "red-edge-pairs" and g.polarity is not None
    polarity = g.polarity

    def oracle(rep):
        found: dict = {}
        for m in members(rep):
            for w, _ in g.oracle(m):
                b = block_of(w)
                if b == rep:
                    continue
                if directed:
                    o = Orientation.FORWARD if polarity(m) > 0 else Orientation.BACKWARD
                    if found.setdefault(b, o) != o:
                        raise ContractionError(
                            f"blocks {format_token(rep)} and {format_token(b)} are joined both ways"
                        )
                else:
                    found.setdefault(b, Orientation.UNDIRECTED)
        return tuple((b, EdgeDecoration(Color.NONE, o)) for b, o in found.items())

    oracle = cached_oracle(oracle)

    def is_valid(t) -> bool:
        try:
            return g.is_valid(t) and block_of(t) == t
        except (InvalidTokenError, TypeError):
            return False

    base = block_of(g.base)
    nb = oracle(base)
    out_deg = sum(d.orientation is Orientation.FORWARD for _, d in nb) if directed else None
    in_deg = len(nb) - out_deg if directed else None

    line = None
    if g.line is not None:
        alpha = g.line.alpha
        line = DeclaredLine(lambda k: block_of(alpha(k)))

    return GraphGenerator(
        family=f"{g.label} | contract({spec.kind})",
        oracle=oracle,
        base=base,
        degree=len(nb),
        oriented=directed,
        in_degree=in_deg,
        out_degree=out_deg,
        is_valid=is_valid,
        line=line,
    )


def contraction_report(g: GraphGenerator, spec: CongruenceSpec, radius: int) -> dict:
    """Count edges lost to the simple-graph convention over ``B(base, radius)``."""
    block_of, _ = _blocks(g, spec)
    b = _ball(g, g.base, radius)
    internal = 0
    pairs: dict = {}
    for u, v, _ in b.edges():
        bu, bv = block_of(b.tokens[u]), block_of(b.tokens[v])
        if bu == bv:
            internal += 1
        else:
            key = (bu, bv) if bu <= bv else (bv, bu)
            pairs[key] = pairs.get(key, 0) + 1
    return {
        "radius": radius,
        "kind": spec.kind,
        "internal_edges": internal,
        "cross_edges": sum(pairs.values()),
        "quotient_edges": len(pairs),
        "collapsed_multi_edges": sum(c - 1 for c in pairs.values()),
    }


# -- distance powers ----------------------------------------------------------------


def power_graph(g: GraphGenerator, n: int) -> GraphGenerator:
    """Join distinct vertices at distance at most ``n``."""
    if n < 1:
        raise ParameterError("power graph needs n >= 1")

    def oracle(v):
        b = _ball(g, v, n)
        return tuple((t, PLAIN) for t in b.tokens[1:])

    oracle = cached_oracle(oracle)
    return GraphGenerator(
        family=f"{g.label} | power({n})",
        oracle=oracle,
        base=g.base,
        degree=len(oracle(g.base)),
        is_valid=g.is_valid,
        line=g.line,
    )
