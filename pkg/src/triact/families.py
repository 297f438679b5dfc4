"""Generators for the shipped example graphs.

Token schemes
-------------
* ``t3``, ``rotation-tree(d)``: reduced words over ``d`` involutions, as
  tuples of letters in ``range(d)``.
* ``colored-t3``, ``joined-ngons(n)``: normal forms in ``C2 * Z`` and
  ``C2 * Z_n``; letter ``0`` is the involution (red), a nonzero ``k`` is the
  ``k``-th power of the other generator (blue moves are ``+1`` and ``-1``).
* ``oriented-t3``: ``(j, w)`` where ``j`` indexes the directed line and ``w``
  is a binary descent word that is empty or starts with ``1``.
* ``joined-2ngons(n)``: ``(address, position)``; the address names a gon in
  the n-regular tree of gons, the position runs over ``0..2n-1``.
* ``delta-p(p)``: pairs ``(i, j)`` with ``j`` in ``1..p``.
* ``strip``: ``(i, j, sign)``, the doubled ``Z x {0, 1}`` digraph.
* ``theta(s)``: built as ``star(bs(delta-p(2), s))``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable

from triact.core import (
    BLUE,
    IN,
    OUT,
    PLAIN,
    RED,
    DeclaredLine,
    GraphGenerator,
)
from triact.errors import ParameterError
from triact.functors import bs, star_construction

FAMILIES = (
    "t3",
    "colored-t3",
    "oriented-t3",
    "joined-ngons",
    "joined-2ngons",
    "delta-p",
    "strip",
    "theta",
    "rotation-tree",
)

# parameter name and minimum value, per family
PARAMS: dict[str, tuple[tuple[str, int], ...]] = {
    "t3": (),
    "colored-t3": (),
    "oriented-t3": (),
    "joined-ngons": (("n", 3),),
    "joined-2ngons": (("n", 2),),
    "delta-p": (("p", 2),),
    "strip": (),
    "theta": (("s", 0),),
    "rotation-tree": (("d", 3),),
}


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in PARAMS:
            raise ParameterError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        wanted = dict(PARAMS[self.family])
        extra = set(self.params) - set(wanted)
        if extra:
            raise ParameterError(f"{self.family} takes no parameter {sorted(extra)[0]!r}")
        for name, lo in wanted.items():
            if name not in self.params:
                raise ParameterError(f"{self.family} needs parameter {name}")
            v = self.params[name]
            if isinstance(v, bool) or not isinstance(v, int) or v < lo:
                raise ParameterError(f"{self.family}: {name} must be an integer >= {lo}, got {v!r}")

    @property
    def label(self) -> str:
        if not self.params:
            return self.family
        return f"{self.family}({','.join(str(self.params[k]) for k, _ in PARAMS[self.family])})"


_SPEC_RE = re.compile(r"^\s*([a-z0-9-]+?)\s*(?:\(\s*([^)]*)\s*\))?\s*$")


def parse_family(text: str) -> FamilySpec:
    """Parse ``"theta(1)"`` or ``"joined-ngons(n=3)"`` into a spec."""
    m = _SPEC_RE.match(text)
    if not m:
        raise ParameterError(f"cannot parse family {text!r}")
    name, args = m.group(1), m.group(2)
    if name not in PARAMS:
        raise ParameterError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")
    names = [k for k, _ in PARAMS[name]]
    params = {}
    if args:
        for i, item in enumerate(a.strip() for a in args.split(",")):
            key, eq, val = item.partition("=")
            if not eq:
                if i >= len(names):
                    raise ParameterError(f"too many parameters for {name}")
                key, val = names[i], item
            try:
                params[key.strip()] = int(val)
            except ValueError:
                raise ParameterError(f"parameter {key.strip()} of {name} must be an integer") from None
    return FamilySpec(name, params)


def make(spec: FamilySpec | str, **params: int) -> GraphGenerator:
    if isinstance(spec, str):
        spec = parse_family(spec) if not params else FamilySpec(spec, params)
    return _BUILDERS[spec.family](**spec.params)


# -- trees from involution words -----------------------------------------------


def _word_tree(d: int, family: str, params: dict) -> GraphGenerator:
    def is_valid(w) -> bool:
        return (isinstance(w, tuple) and all(isinstance(x, int) and 0 <= x < d for x in w)
                and all(a != b for a, b in zip(w, w[1:])))

    def oracle(w):
        return tuple(((w[:-1] if w and w[-1] == x else w + (x,)), PLAIN) for x in range(d))

    def vertex(k: int):
        # geodesic through the root: 0,1,0,1,... forwards and 2,1,2,1,... backwards
        # (d == 2 falls back to 1,0,1,0,... backwards)
        if k >= 0:
            return tuple(i % 2 for i in range(k))
        a = 2 if d > 2 else 1
        b = 1 if d > 2 else 0
        return tuple(a if i % 2 == 0 else b for i in range(-k))

    return GraphGenerator(
        family=family,
        params=params,
        oracle=oracle,
        base=(),
        degree=d,
        is_valid=is_valid,
        line=DeclaredLine(vertex),
    )


def t3() -> GraphGenerator:
    return _word_tree(3, "t3", {})


def rotation_tree(d: int) -> GraphGenerator:
    """The d-regular tree; the cyclic order of each neighbor list is its rotation."""
    FamilySpec("rotation-tree", {"d": d})
    return _word_tree(d, "rotation-tree", {"d": d})


def regular_tree(d: int) -> GraphGenerator:
    """Like :func:`rotation_tree` but also allows ``d = 2`` (the two-way path)."""
    if d < 2:
        raise ParameterError("regular tree needs d >= 2")
    return _word_tree(d, "rotation-tree", {"d": d})


# -- free products C2 * C_m (m = 0 meaning Z) ------------------------------------


def _free_product(m: int, family: str, params: dict, quotient: Callable | None) -> GraphGenerator:
    def norm(k: int) -> int:
        return k % m if m else k

    def times_red(w):
        return w[:-1] if w and w[-1] == 0 else w + (0,)

    def times_blue(w, e: int):
        if w and w[-1] != 0:
            k = norm(w[-1] + e)
            return w[:-1] if k == 0 else w[:-1] + (k,)
        return w + (norm(e),)

    def is_valid(w) -> bool:
        if not isinstance(w, tuple):
            return False
        for i, x in enumerate(w):
            if not isinstance(x, int) or (m and not 0 <= x < m):
                return False
            if i and (x == 0) == (w[i - 1] == 0):
                return False
        return True

    def oracle(w):
        return ((times_red(w), RED), (times_blue(w, 1), BLUE), (times_blue(w, -1), BLUE))

    memo = {0: ()}

    def vertex(k: int):
        # forwards: r, b, r, b, ...; backwards: b^-1, r, b^-1, r, ...
        if k not in memo:
            if k > 0:
                prev = vertex(k - 1)
                memo[k] = times_red(prev) if k % 2 == 1 else times_blue(prev, 1)
            else:
                nxt = vertex(k + 1)
                memo[k] = times_blue(nxt, -1) if k % 2 == 1 else times_red(nxt)
        return memo[k]

    return GraphGenerator(
        family=family,
        params=params,
        oracle=oracle,
        base=(),
        degree=3,
        colored=True,
        is_valid=is_valid,
        line=DeclaredLine(vertex, alternating=True),
        expected_quotient=quotient,
    )


def colored_t3() -> GraphGenerator:
    return _free_product(0, "colored-t3", {}, None)


def joined_ngons(n: int) -> GraphGenerator:
    FamilySpec("joined-ngons", {"n": n})
    return _free_product(n, "joined-ngons", {"n": n},
                         lambda: ("blue-components", rotation_tree(n)))


# -- oriented tree ---------------------------------------------------------------


def oriented_t3() -> GraphGenerator:
    """T_3 oriented away from one end: every vertex has one in-arc and two out-arcs."""

    def is_valid(t) -> bool:
        return (isinstance(t, tuple) and len(t) == 2 and isinstance(t[0], int)
                and isinstance(t[1], tuple) and all(x in (0, 1) for x in t[1])
                and (not t[1] or t[1][0] == 1))

    def oracle(t):
        j, w = t
        if not w:
            return (((j - 1, ()), IN), ((j + 1, ()), OUT), ((j, (1,)), OUT))
        return (((j, w[:-1]), IN), ((j, w + (0,)), OUT), ((j, w + (1,)), OUT))

    return GraphGenerator(
        family="oriented-t3",
        oracle=oracle,
        base=(0, ()),
        degree=3,
        oriented=True,
        in_degree=1,
        out_degree=2,
        is_valid=is_valid,
        line=DeclaredLine(lambda k: (k, ())),
    )


# -- layered digraphs and their doublings ------------------------------------------


def delta_p(p: int) -> GraphGenerator:
    FamilySpec("delta-p", {"p": p})

    def is_valid(t) -> bool:
        return (isinstance(t, tuple) and len(t) == 2 and all(isinstance(x, int) for x in t)
                and 1 <= t[1] <= p)

    def oracle(t):
        i = t[0]
        return tuple(((i + 1, j), OUT) for j in range(1, p + 1)) + tuple(
            ((i - 1, j), IN) for j in range(1, p + 1)
        )

    return GraphGenerator(
        family="delta-p",
        params={"p": p},
        oracle=oracle,
        base=(0, 1),
        degree=2 * p,
        oriented=True,
        in_degree=p,
        out_degree=p,
        is_valid=is_valid,
        line=DeclaredLine(lambda k: (k, 1)),
    )


def strip() -> GraphGenerator:
    """Hand-written doubling of the layered digraph on Z x {0, 1}."""

    def is_valid(t) -> bool:
        return (isinstance(t, tuple) and len(t) == 3 and isinstance(t[0], int)
                and t[1] in (0, 1) and t[2] in (-1, 1))

    def oracle(t):
        i, j, sgn = t
        step = 1 if sgn > 0 else -1
        return (((i, j, -sgn), RED), ((i + step, 0, -sgn), BLUE), ((i + step, 1, -sgn), BLUE))

    def vertex(k: int):
        i, side = divmod(k, 2)
        return (i, 0, -1 if side == 0 else 1)

    def quotient():
        g = delta_p(2)
        return ("red-edge-pairs", g)

    return GraphGenerator(
        family="strip",
        oracle=oracle,
        base=(0, 0, -1),
        degree=3,
        colored=True,
        is_valid=is_valid,
        line=DeclaredLine(vertex, alternating=True),
        polarity=lambda t: t[2],
        expected_quotient=quotient,
    )


def theta(s: int) -> GraphGenerator:
    FamilySpec("theta", {"s": s})
    inner = bs(delta_p(2), s)
    return star_construction(inner).renamed("theta", s=s)


# -- joined 2n-gons ----------------------------------------------------------------


def joined_2ngons(n: int) -> GraphGenerator:
    """2n-gons glued along opposite pairs, following the n-regular tree of gons.

    Pair ``q`` of a gon is ``{q, q + n}``. The root gon sends every pair to a
    child; any other gon uses pair 0 for its parent and pairs ``1..n-1`` for
    children. Red edges keep the side: positions ``q`` and ``q + n`` attach
    to the child's positions ``0`` and ``n``.
    """
    FamilySpec("joined-2ngons", {"n": n})
    m = 2 * n

    def is_valid(t) -> bool:
        if not (isinstance(t, tuple) and len(t) == 2 and isinstance(t[0], tuple)):
            return False
        addr, pos = t
        if not isinstance(pos, int) or not 0 <= pos < m:
            return False
        return all(isinstance(q, int) and (1 if i else 0) <= q < n for i, q in enumerate(addr))

    def red(t):
        addr, pos = t
        q, side = pos % n, pos // n
        if q == 0 and addr:
            return (addr[:-1], addr[-1] + side * n)
        return (addr + (q,), side * n)

    def oracle(t):
        addr, pos = t
        return ((red(t), RED), ((addr, (pos + 1) % m), BLUE), ((addr, (pos - 1) % m), BLUE))

    def vertex(k: int):
        i, side = divmod(k, 2)
        if i >= 0:
            if side == 1:
                return ((0,) + (1,) * i, 0)
            return ((), 0) if i == 0 else ((0,) + (1,) * (i - 1), 1)
        depth = -i - 1
        if side == 0:
            return ((1,) * (depth + 1), 0)
        return ((1,) * depth, 1)

    return GraphGenerator(
        family="joined-2ngons",
        params={"n": n},
        oracle=oracle,
        base=((), 0),
        degree=3,
        colored=True,
        is_valid=is_valid,
        line=DeclaredLine(vertex, alternating=True),
        expected_quotient=lambda: ("blue-components", regular_tree(n)),
    )


_BUILDERS: dict[str, Callable[..., GraphGenerator]] = {
    "t3": t3,
    "colored-t3": colored_t3,
    "oriented-t3": oriented_t3,
    "joined-ngons": joined_ngons,
    "joined-2ngons": joined_2ngons,
    "delta-p": delta_p,
    "strip": strip,
    "theta": theta,
    "rotation-tree": rotation_tree,
}
