"""Automorphisms of rooted decorated balls and the local-action classifier.

Every search fixes the center of the ball. Candidate images are pruned by
hashed color refinement, started from the center and any other fixed points;
the backtracking extension itself runs in the compiled kernel. Orbits are
exact for the ball: a candidate is either reached from known generators or
settled by a search.

These groups approximate vertex stabilizers of the infinite graph. On trees
every ball automorphism extends, so orbits are exact; elsewhere they can only
over-approximate, and shrink as the radius grows.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from math import prod
from typing import Iterable, Optional, Sequence

import numpy as np

from triact import _config, _kernels
from triact.ball import Ball, ball
from triact.core import Color, GraphGenerator, Token, format_token
from triact.errors import (
    BudgetExceededError,
    ColoringMismatchError,
    ParameterError,
    PreconditionError,
    TriactError,
)
from triact.permgroup import elements

_BIG = np.uint64(0x100000001B3)


class _Prepared:
    """A ball with decoration codes, BFS parents and a refinement cache."""

    def __init__(self, b: Ball, colors: bool = True, orientation: bool = True):
        self.ball = b
        self.n = b.n
        self.indptr = b.indptr
        self.indices = b.indices
        self.codes = b.codes(colors, orientation)
        rows = np.repeat(np.arange(self.n), np.diff(b.indptr))
        self.rows = rows
        up = b.depth[b.indices] == b.depth[rows] + 1
        parent = np.full(self.n, self.n, np.int64)
        np.minimum.at(parent, b.indices[up], rows[up])
        parent[0] = 0
        self.parent = parent
        pcode = np.zeros(self.n, np.int64)
        tree = parent[b.indices] == rows
        tree &= up
        pcode[b.indices[tree]] = self.codes[tree]
        self.pcode = pcode
        self._cache: dict = {}

    def refine(self, fixed: Sequence[int]) -> np.ndarray:
        key = tuple(fixed)
        hit = self._cache.get(key)
        if hit is None:
            init = np.zeros(self.n, np.uint64)
            init[0] = 1
            for k, v in enumerate(fixed):
                init[v] = k + 2
            hit = _kernels.refine_colors(self.indptr, self.indices, self.codes, init)
            if len(self._cache) > 64:
                self._cache.clear()
            self._cache[key] = hit
        return hit

    def edge_keys(self, perm: Optional[np.ndarray] = None) -> np.ndarray:
        u, w = (self.rows, self.indices) if perm is None else (perm[self.rows], perm[self.indices])
        keys = (u.astype(np.uint64) * np.uint64(self.n) + w.astype(np.uint64)) * np.uint64(16)
        return np.sort(keys + self.codes.astype(np.uint64))


def _iso(a: _Prepared, b: _Prepared, fixed_a: Sequence[int], fixed_b: Sequence[int],
         prefer_identity: bool = False, node_budget: Optional[int] = None) -> Optional[np.ndarray]:
    if a.n != b.n or a.indices.size != b.indices.size:
        return None
    if not np.array_equal(a.ball.depth, b.ball.depth):
        return None
    if len(fixed_a) != len(fixed_b):
        raise ParameterError("fixed point lists differ in length")
    fa, fb = [], []
    for x, y in zip(fixed_a, fixed_b):
        if (x == 0) != (y == 0):
            return None
        if x != 0:
            fa.append(int(x))
            fb.append(int(y))
    if len(set(fa)) != len(fa) or len(set(fb)) != len(fb):
        return None
    ca, cb = a.refine(fa), b.refine(fb)
    if any(ca[x] != cb[y] for x, y in zip(fa, fb)):
        return None
    if not np.array_equal(np.sort(ca), np.sort(cb)):
        return None
    budget = _config.node_budget() if node_budget is None else node_budget
    status, perm, nodes = _kernels.search(
        a.indptr, a.indices, a.codes, ca, a.parent, a.pcode,
        b.indptr, b.indices, b.codes, cb, prefer_identity, budget,
    )
    if status < 0:
        raise BudgetExceededError(f"automorphism search exceeded {budget} nodes")
    if status == 0:
        return None
    if not np.array_equal(a.edge_keys(perm), b.edge_keys()):
        raise TriactError("search returned a map that is not an isomorphism")
    return np.asarray(perm, np.int64)


def find_isomorphism(a: Ball, b: Ball, fixed_a: Sequence[int] = (), fixed_b: Sequence[int] = (),
                     colors: bool = True, orientation: bool = True) -> Optional[np.ndarray]:
    """A center-preserving decorated isomorphism ``a -> b`` as an index array, or None.

    ``fixed_a[k]`` is forced onto ``fixed_b[k]``.
    """
    return _iso(_Prepared(a, colors, orientation), _Prepared(b, colors, orientation),
                fixed_a, fixed_b)


def rooted_isomorphic(g: GraphGenerator, h: GraphGenerator, radius: int,
                      center_g: Optional[Token] = None, center_h: Optional[Token] = None,
                      colors: bool = True, orientation: bool = True) -> bool:
    a = ball(g, center_g, radius)
    b = ball(h, center_h, radius)
    return find_isomorphism(a, b, colors=colors, orientation=orientation) is not None


# -- orbits under the center stabilizer ----------------------------------------------------


def _close(start: list, gens: list, act, allowed=None) -> set:
    seen = set(start)
    queue = deque(start)
    while queue:
        x = queue.popleft()
        for g in gens:
            y = act(g, x)
            if y not in seen and (allowed is None or y in allowed):
                seen.add(y)
                queue.append(y)
    return seen


def _point_orbit(ctx: _Prepared, fixed: list[int], t: int) -> tuple[list[int], list[np.ndarray]]:
    cols = ctx.refine(fixed)
    cell = np.flatnonzero(cols == cols[t]).tolist()
    gens: list[np.ndarray] = []
    reached = {t}
    act = lambda g, x: int(g[x])  # noqa: E731
    for c in cell:
        if c in reached:
            continue
        perm = _iso(ctx, ctx, fixed + [t], fixed + [c], prefer_identity=True)
        if perm is None:
            continue
        gens.append(perm)
        reached = _close(sorted(reached), gens, act)
    return sorted(reached), gens


def tuple_orbit(ctx: _Prepared, rep: tuple, candidates: Iterable[tuple],
                fixed: Sequence[int] = ()) -> tuple[list[tuple], list[np.ndarray]]:
    """Members of ``candidates`` in the orbit of ``rep`` (fixing ``fixed`` as well)."""
    fixed = list(fixed)
    cols = ctx.refine(fixed)
    cand = sorted(set(candidates) | {rep})
    allowed = set(cand)
    sig = tuple(cols[list(rep)])
    gens: list[np.ndarray] = []
    act = lambda g, x: tuple(int(g[i]) for i in x)  # noqa: E731
    reached = {rep}
    for c in cand:
        if c in reached or tuple(cols[list(c)]) != sig:
            continue
        perm = _iso(ctx, ctx, fixed + list(rep), fixed + list(c), prefer_identity=True)
        if perm is None:
            continue
        gens.append(perm)
        reached = _close(sorted(reached), gens, act, allowed)
    return sorted(reached), gens


def tuple_orbits(ctx: _Prepared, tuples: Iterable[tuple]) -> list[list[tuple]]:
    """Partition ``tuples`` into orbits of the center stabilizer."""
    pending = sorted(set(tuples))
    out = []
    while pending:
        orbit, _ = tuple_orbit(ctx, pending[0], pending)
        out.append(orbit)
        done = set(orbit)
        pending = [t for t in pending if t not in done]
    return out


def local_orbit(g: GraphGenerator, base: Optional[Token], target: Token, radius: int,
                colors: bool = True, orientation: bool = True) -> set:
    """Tokens in the orbit of ``target`` under center-fixing automorphisms of the ball."""
    b = ball(g, base, radius)
    if target not in b:
        raise PreconditionError(f"{format_token(target)} is outside the radius-{radius} ball")
    return orbit_in_ball(b, b.index(target), colors, orientation)


def orbit_in_ball(b: Ball, t: int, colors: bool = True, orientation: bool = True) -> set:
    ctx = _Prepared(b, colors, orientation)
    orbit, _ = _point_orbit(ctx, [], t)
    return {b.tokens[i] for i in orbit}


# -- the whole stabilizer ---------------------------------------------------------------


@dataclass(frozen=True)
class CenterStabilizer:
    """Generators and orbit data of the center-fixing automorphism group of a ball."""

    generators: tuple
    base: tuple
    orbit_sizes: tuple
    order: int
    radius: int
    n: int

    def as_tuples(self) -> list[tuple[int, ...]]:
        return [tuple(int(x) for x in g) for g in self.generators]


def ball_autos_fixing_center(b: Ball, colors: bool = True, orientation: bool = True) -> CenterStabilizer:
    """Strong generating set built along a chain of point stabilizers.

    At each level the first vertex with a non-trivial refined cell is taken as
    the next base point, its orbit is computed exactly and it is then fixed.
    """
    ctx = _Prepared(b, colors, orientation)
    fixed: list[int] = []
    gens: list[np.ndarray] = []
    sizes: list[int] = []
    while True:
        cols = ctx.refine(fixed)
        _, first, counts = np.unique(cols, return_index=True, return_counts=True)
        open_cells = first[counts > 1]
        if open_cells.size == 0:
            break
        v = int(open_cells.min())
        orbit, level_gens = _point_orbit(ctx, fixed, v)
        gens.extend(level_gens)
        sizes.append(len(orbit))
        fixed.append(v)
    for g in gens:
        if not np.array_equal(b.depth[g], b.depth):
            raise TriactError("automorphism moved a vertex to another depth")
    return CenterStabilizer(
        generators=tuple(gens),
        base=tuple(fixed),
        orbit_sizes=tuple(sizes),
        order=prod(sizes),
        radius=b.radius,
        n=b.n,
    )


# -- local action ------------------------------------------------------------------------


@dataclass(frozen=True)
class LocalActionReport:
    vertex: Token
    neighbors: tuple
    order: int
    fixed_neighbors: tuple
    radius: int
    permutations: tuple = field(default=())

    def to_dict(self) -> dict:
        return {
            "vertex": format_token(self.vertex),
            "neighbors": [format_token(t) for t in self.neighbors],
            "order": self.order,
            "fixed_neighbors": [format_token(t) for t in self.fixed_neighbors],
            "radius": self.radius,
            "permutations": [list(p) for p in self.permutations],
        }


def _local_action_ball(b: Ball, colors: bool, orientation: bool) -> LocalActionReport:
    ctx = _Prepared(b, colors, orientation)
    nbr = b.sphere(1).tolist()
    d = len(nbr)
    found: list[tuple] = []
    group = {tuple(range(d))}
    for pi in itertools.permutations(range(d)):
        if pi in group:
            continue
        if _iso(ctx, ctx, nbr, [nbr[j] for j in pi], prefer_identity=True) is not None:
            found.append(pi)
            group = elements(found, d)
    fixed = tuple(b.tokens[nbr[i]] for i in range(d) if all(p[i] == i for p in group))
    return LocalActionReport(
        vertex=b.center,
        neighbors=tuple(b.tokens[i] for i in nbr),
        order=len(group),
        fixed_neighbors=fixed,
        radius=b.radius,
        permutations=tuple(sorted(group)),
    )


def local_action(g: GraphGenerator, v: Optional[Token] = None, radius: int = 3,
                 colors: bool = True, orientation: bool = True) -> LocalActionReport:
    """Permutation group induced on ``N(v)`` by center-fixing automorphisms of ``B(v, radius)``."""
    if radius < 1:
        raise ParameterError("local action needs radius >= 1")
    return _local_action_ball(ball(g, v, radius), colors, orientation)


# -- case classification ------------------------------------------------------------------

CASES = ("Discrete", "CaseA", "CaseB", "CaseC")


@dataclass(frozen=True)
class CaseLabel:
    label: str
    radius: int
    local_order: int
    fixed_neighbor: Optional[Token] = None
    red_neighbors: tuple = ()
    blue_neighbors: tuple = ()

    def __str__(self) -> str:
        return self.label

    def to_dict(self) -> dict:
        out = {"case": self.label, "radius": self.radius, "local_order": self.local_order}
        if self.fixed_neighbor is not None:
            out["fixed_neighbor"] = format_token(self.fixed_neighbor)
        if self.label == "CaseC":
            out["red"] = [format_token(t) for t in self.red_neighbors]
            out["blue"] = [format_token(t) for t in self.blue_neighbors]
        return out


def classify_case(g: GraphGenerator, radius: int = 3, intrinsic: bool = False,
                  v: Optional[Token] = None) -> CaseLabel:
    """Decide which local-action case the graph realizes at ``v`` (default: base).

    Declared colors and orientations are respected unless ``intrinsic``, in
    which case colors are ignored and the undecorated structure decides.
    """
    if g.degree != 3:
        raise PreconditionError(f"{g.label} is not trivalent")
    if radius < 3:
        raise ParameterError("classification needs radius >= 3")
    colors = not intrinsic
    v = g.base if v is None else v
    rep = local_action(g, v, radius, colors=colors)
    if rep.order in (1, 3):
        return CaseLabel("Discrete", radius, rep.order)
    if rep.order == 6:
        return CaseLabel("CaseA", radius, rep.order)
    (f,) = rep.fixed_neighbors
    back = local_action(g, f, radius, colors=colors)
    if back.order == 2 and back.fixed_neighbors == (v,):
        blues = tuple(t for t in rep.neighbors if t != f)
        return CaseLabel("CaseC", radius, rep.order, f, (f,), blues)
    return CaseLabel("CaseB", radius, rep.order, f)


@dataclass(frozen=True)
class RecoveredColoring:
    radius: int
    red: frozenset  # frozensets of two tokens
    blue: frozenset
    checked_vertices: int
    agrees_with_declared: Optional[bool]

    def color_of(self, u: Token, v: Token) -> Color:
        e = frozenset((u, v))
        if e in self.red:
            return Color.RED
        if e in self.blue:
            return Color.BLUE
        raise KeyError("edge not covered by the recovered coloring")


def recover_coloring(g: GraphGenerator, radius: int = 4, intrinsic: bool = False,
                     local_radius: int = 3) -> RecoveredColoring:
    """Red edge at each vertex of depth <= radius - 2 is its locally fixed neighbor.

    Raises :class:`ColoringMismatchError` if the recovered classes are not
    consistent across an edge, or disagree with declared colors.
    """
    if radius < 2:
        raise ParameterError("recover_coloring needs radius >= 2")
    label = classify_case(g, max(3, local_radius), intrinsic=intrinsic)
    if label.label != "CaseC":
        raise PreconditionError(f"{g.label} is {label.label}, not CaseC")
    b = ball(g, g.base, radius)
    red, blue = set(), set()
    inner = [b.tokens[i] for i in range(b.n) if b.depth[i] <= radius - 2]
    for u in inner:
        rep = local_action(g, u, local_radius, colors=not intrinsic)
        if rep.order != 2 or len(rep.fixed_neighbors) != 1:
            raise ColoringMismatchError(f"{format_token(u)} has no unique fixed neighbor")
        f = rep.fixed_neighbors[0]
        for w in rep.neighbors:
            (red if w == f else blue).add(frozenset((u, w)))
    clash = red & blue
    if clash:
        e = sorted(format_token(t) for t in next(iter(clash)))
        raise ColoringMismatchError(f"edge {e[0]}-{e[1]} recovered as both red and blue")
    agrees = None
    if g.colored:
        agrees = True
        for u in inner:
            for w, d in g.neighbors(u):
                got = Color.RED if frozenset((u, w)) in red else Color.BLUE
                if got is not d.color:
                    raise ColoringMismatchError(
                        f"edge {format_token(u)}-{format_token(w)} recovered {got.label}, "
                        f"declared {d.color.label}"
                    )
    return RecoveredColoring(radius, frozenset(red), frozenset(blue), len(inner), agrees)
