"""Rooted balls: finite, explicit windows into an oracle graph.

Vertices get dense indices in BFS order, each new sphere sorted by token, so
``restrict(r)`` is always a prefix of the vertex list. Adjacency is stored as
CSR arrays with one entry per (vertex, neighbor) incidence.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from triact import _config
from triact.core import (
    Color,
    EdgeDecoration,
    GraphGenerator,
    Orientation,
    Token,
    format_token,
)
from triact.errors import BudgetExceededError, ParameterError


def _sort_tokens(tokens: list) -> list:
    try:
        return sorted(tokens)
    except TypeError:
        # heterogeneous token shapes; fall back to the printed form
        return sorted(tokens, key=format_token)


@dataclass(frozen=True, eq=False)
class Ball:
    family: str
    params: dict
    center: Token
    radius: int
    tokens: tuple
    depth: np.ndarray  # int32, non-decreasing
    indptr: np.ndarray  # int64, length n + 1
    indices: np.ndarray  # int32
    color: np.ndarray  # int8, Color per incidence
    orient: np.ndarray  # int8, Orientation per incidence
    colored: bool = False
    oriented: bool = False

    def __post_init__(self):
        object.__setattr__(self, "_index", {t: i for i, t in enumerate(self.tokens)})

    @property
    def n(self) -> int:
        return len(self.tokens)

    @property
    def n_edges(self) -> int:
        return int(self.indices.size // 2)

    def __len__(self) -> int:
        return self.n

    def __contains__(self, token) -> bool:
        return token in self._index

    def index(self, token: Token) -> int:
        try:
            return self._index[token]
        except KeyError:
            raise KeyError(f"{format_token(token)} is not in the ball") from None

    def distance(self, token: Token) -> int:
        return int(self.depth[self.index(token)])

    def neighbors(self, i: int) -> np.ndarray:
        return self.indices[self.indptr[i] : self.indptr[i + 1]]

    def incidences(self, i: int) -> Iterator[tuple[int, EdgeDecoration]]:
        for k in range(self.indptr[i], self.indptr[i + 1]):
            yield int(self.indices[k]), EdgeDecoration(
                Color(int(self.color[k])), Orientation(int(self.orient[k]))
            )

    def degree(self, i: int) -> int:
        return int(self.indptr[i + 1] - self.indptr[i])

    def sphere(self, r: int) -> np.ndarray:
        lo, hi = np.searchsorted(self.depth, [r, r + 1])
        return np.arange(lo, hi)

    def sphere_sizes(self) -> list[int]:
        return np.bincount(self.depth, minlength=self.radius + 1).tolist()

    def codes(self, colors: bool = True, orientation: bool = True) -> np.ndarray:
        """Integer decoration code per incidence, honoring the given flags."""
        c = self.color.astype(np.int64) if colors else np.zeros(self.indices.size, np.int64)
        o = self.orient.astype(np.int64) if orientation else np.zeros(self.indices.size, np.int64)
        return c * 3 + o

    def has_edge(self, i: int, j: int) -> bool:
        return bool(np.any(self.neighbors(i) == j))

    def edge_color(self, i: int, j: int) -> Color:
        for w, d in self.incidences(i):
            if w == j:
                return d.color
        raise KeyError(f"no edge {i}-{j}")

    def edges(self) -> Iterator[tuple[int, int, Color]]:
        """Undirected edges ``(u, v, color)`` with ``u < v``, sorted."""
        rows = np.repeat(np.arange(self.n), np.diff(self.indptr))
        keep = rows < self.indices
        order = np.lexsort((self.indices[keep], rows[keep]))
        for u, v, c in zip(rows[keep][order], self.indices[keep][order], self.color[keep][order]):
            yield int(u), int(v), Color(int(c))

    def arcs(self) -> Iterator[tuple[int, int]]:
        rows = np.repeat(np.arange(self.n), np.diff(self.indptr))
        fwd = self.orient == Orientation.FORWARD
        order = np.lexsort((self.indices[fwd], rows[fwd]))
        for u, v in zip(rows[fwd][order], self.indices[fwd][order]):
            yield int(u), int(v)

    def restrict(self, r: int) -> "Ball":
        """The ball of radius ``r <= radius`` around the same center."""
        if r < 0 or r > self.radius:
            raise ParameterError(f"cannot restrict radius {self.radius} ball to {r}")
        if r == self.radius:
            return self
        m = int(np.searchsorted(self.depth, r, side="right"))
        lo, hi = self.indptr[0], self.indptr[m]
        idx = self.indices[lo:hi]
        keep = idx < m
        rows = np.repeat(np.arange(m), np.diff(self.indptr[: m + 1]))
        counts = np.bincount(rows[keep], minlength=m)
        indptr = np.zeros(m + 1, np.int64)
        np.cumsum(counts, out=indptr[1:])
        return Ball(
            family=self.family,
            params=self.params,
            center=self.center,
            radius=r,
            tokens=self.tokens[:m],
            depth=self.depth[:m],
            indptr=indptr,
            indices=idx[keep],
            color=self.color[lo:hi][keep],
            orient=self.orient[lo:hi][keep],
            colored=self.colored,
            oriented=self.oriented,
        )

    # export -----------------------------------------------------------------

    def to_dict(self) -> dict:
        out = {
            "family": self.family,
            "params": dict(self.params),
            "center": format_token(self.center),
            "radius": self.radius,
            "vertices": [
                {"index": i, "token": format_token(t), "depth": int(self.depth[i])}
                for i, t in enumerate(self.tokens)
            ],
            "edges": [{"u": u, "v": v, "color": c.label} for u, v, c in self.edges()],
        }
        if self.oriented:
            out["arcs"] = [{"from": u, "to": v} for u, v in self.arcs()]
        return out

    def to_json(self, indent: Optional[int] = None) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=indent)

    def to_dot(self) -> str:
        lines = [f'graph "{self.family}" {{']
        for i, t in enumerate(self.tokens):
            lines.append(f'  {i} [label="{format_token(t)}"];')
        arcs = set(self.arcs()) if self.oriented else set()
        for u, v, c in self.edges():
            attrs = []
            if c is not Color.NONE:
                attrs.append(f'color="{c.label}"')
            if (u, v) in arcs:
                attrs.append('dir="forward"')
            elif (v, u) in arcs:
                attrs.append('dir="back"')
            tail = f" [{', '.join(attrs)}]" if attrs else ""
            lines.append(f"  {u} -- {v}{tail};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def ball(g: GraphGenerator, center: Optional[Token] = None, radius: int = 1,
         budget: Optional[int] = None) -> Ball:
    """Breadth-first closure of ``g`` around ``center`` (default: the base vertex)."""
    if radius < 0:
        raise ParameterError("radius must be non-negative")
    if center is None:
        center = g.base
    budget = _config.vertex_budget() if budget is None else budget

    tokens = [center]
    index = {center: 0}
    depth = [0]
    adj: list[tuple] = []
    frontier = [center]
    for d in range(radius + 1):
        fresh = set()
        for v in frontier:
            nb = g.neighbors(v)
            adj.append(nb)
            if d < radius:
                for w, _ in nb:
                    if w not in index and w not in fresh:
                        fresh.add(w)
        if not fresh:
            break
        if len(tokens) + len(fresh) > budget:
            raise BudgetExceededError(
                f"ball of radius {radius} around {format_token(center)} in {g.label} "
                f"exceeds {budget} vertices"
            )
        frontier = _sort_tokens(list(fresh))
        for w in frontier:
            index[w] = len(tokens)
            tokens.append(w)
            depth.append(d + 1)

    indptr = np.zeros(len(tokens) + 1, np.int64)
    cols, colors, orients = [], [], []
    for i, nb in enumerate(adj):
        k = 0
        for w, dec in nb:
            j = index.get(w)
            if j is None:
                continue
            cols.append(j)
            colors.append(int(dec.color))
            orients.append(int(dec.orientation))
            k += 1
        indptr[i + 1] = indptr[i] + k
    return Ball(
        family=g.label,
        params=dict(g.params),
        center=center,
        radius=radius,
        tokens=tuple(tokens),
        depth=np.asarray(depth, np.int32),
        indptr=indptr,
        indices=np.asarray(cols, np.int32),
        color=np.asarray(colors, np.int8),
        orient=np.asarray(orients, np.int8),
        colored=g.colored,
        oriented=g.oriented,
    )


def distance(g: GraphGenerator, a: Token, b: Token, limit: int = 64) -> int:
    """Graph distance by BFS from ``a``; raises if ``b`` is beyond ``limit``."""
    if a == b:
        return 0
    seen = {a}
    frontier = [a]
    budget = _config.vertex_budget()
    for d in range(1, limit + 1):
        nxt = []
        for v in frontier:
            for w, _ in g.neighbors(v):
                if w == b:
                    return d
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        if len(seen) > budget:
            raise BudgetExceededError(f"distance search in {g.label} exceeds {budget} vertices")
        frontier = nxt
    raise BudgetExceededError(f"{format_token(b)} is farther than {limit} from {format_token(a)}")
