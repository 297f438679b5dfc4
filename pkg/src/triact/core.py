"""Decorated, locally finite graphs given by neighbor oracles.

A graph is never stored: a :class:`GraphGenerator` maps a vertex token to its
ordered neighbor list together with the decoration of each incident edge.
Tokens are nested tuples of integers, so equality is canonical and tuples give
a total order within a family.
"""

from __future__ import annotations

import ast
import functools
from dataclasses import dataclass, field, replace
from enum import IntEnum
from types import MappingProxyType
from typing import Callable, Hashable, Mapping, NamedTuple, Optional, Sequence

from triact.errors import InvalidTokenError, PreconditionError, UnsupportedError

Token = Hashable


class Color(IntEnum):
    NONE = 0
    RED = 1
    BLUE = 2

    @property
    def label(self) -> str:
        return self.name.lower()


class Orientation(IntEnum):
    UNDIRECTED = 0
    FORWARD = 1  # arc from the vertex whose list this is, to the neighbor
    BACKWARD = 2  # arc from the neighbor to this vertex


class EdgeDecoration(NamedTuple):
    color: Color = Color.NONE
    orientation: Orientation = Orientation.UNDIRECTED

    def reversed(self) -> "EdgeDecoration":
        o = self.orientation
        if o is Orientation.FORWARD:
            o = Orientation.BACKWARD
        elif o is Orientation.BACKWARD:
            o = Orientation.FORWARD
        return EdgeDecoration(self.color, o)


PLAIN = EdgeDecoration()
RED = EdgeDecoration(Color.RED)
BLUE = EdgeDecoration(Color.BLUE)
OUT = EdgeDecoration(Color.NONE, Orientation.FORWARD)
IN = EdgeDecoration(Color.NONE, Orientation.BACKWARD)

Neighborhood = tuple[tuple[Token, EdgeDecoration], ...]


def format_token(token: Token) -> str:
    """Canonical compact string for a token; inverse of :func:`parse_token`."""
    return repr(token).replace(" ", "")


def _is_token(x) -> bool:
    if isinstance(x, tuple):
        return all(_is_token(y) for y in x)
    return isinstance(x, int) and not isinstance(x, bool)


def parse_token(text: str) -> Token:
    """Parse a token string: an integer or a nested tuple of integers."""
    try:
        t = ast.literal_eval(text)
    except (ValueError, SyntaxError, TypeError, MemoryError, RecursionError) as exc:
        raise InvalidTokenError(f"cannot parse token {text!r}") from exc
    if not _is_token(t):
        raise InvalidTokenError(f"{text!r} is not a nested tuple of integers")
    return t


@dataclass(frozen=True)
class DeclaredLine:
    """A two-sided sequence of vertices, indexed by all integers.

    For an ``alternating`` line the sequence is
    ``..., a(-1), b(-1), a(0), b(0), a(1), ...`` with ``vertex(2i) = a(i)`` and
    ``vertex(2i + 1) = b(i)``; edges ``{a(i), b(i)}`` are red and
    ``{b(i), a(i+1)}`` blue. Otherwise ``vertex(i) = a(i)``.
    """

    vertex: Callable[[int], Token]
    alternating: bool = False

    @property
    def step(self) -> int:
        return 2 if self.alternating else 1

    def alpha(self, i: int) -> Token:
        return self.vertex(self.step * i)

    def beta(self, i: int) -> Token:
        if not self.alternating:
            raise UnsupportedError("beta vertices exist only on alternating lines")
        return self.vertex(2 * i + 1)

    def window(self, lo: int, hi: int) -> tuple[Token, ...]:
        return tuple(self.vertex(k) for k in range(lo, hi + 1))


def _always_valid(_token: Token) -> bool:
    return True


@dataclass(frozen=True, eq=False)
class GraphGenerator:
    """Deterministic neighbor oracle plus family metadata.

    ``degree`` is the declared total degree; for oriented graphs
    ``in_degree``/``out_degree`` are declared as well. ``polarity`` is present
    on vertex-doubled graphs and tells which copy (``-1`` or ``+1``) a token is.
    ``expected_quotient`` lazily returns ``(congruence kind, generator)`` for
    graphs that are known to contract onto another shipped graph.
    """

    family: str
    oracle: Callable[[Token], Neighborhood]
    base: Token
    degree: int
    params: Mapping[str, int] = field(default_factory=dict)
    colored: bool = False
    oriented: bool = False
    in_degree: Optional[int] = None
    out_degree: Optional[int] = None
    is_valid: Callable[[Token], bool] = _always_valid
    line: Optional[DeclaredLine] = None
    polarity: Optional[Callable[[Token], int]] = None
    expected_quotient: Optional[Callable[[], tuple[str, "GraphGenerator"]]] = None

    def __post_init__(self):
        object.__setattr__(self, "params", MappingProxyType(dict(self.params)))

    @property
    def label(self) -> str:
        if not self.params:
            return self.family
        return f"{self.family}({','.join(str(v) for v in self.params.values())})"

    def neighbors(self, v: Token) -> Neighborhood:
        if not self.is_valid(v):
            raise InvalidTokenError(f"{format_token(v)} is not a vertex of {self.label}")
        return self.oracle(v)

    def renamed(self, family: str, **params: int) -> "GraphGenerator":
        return replace(self, family=family, params=params)

    def __repr__(self) -> str:
        return f"GraphGenerator({self.label})"


def neighbors(g: GraphGenerator, v: Token) -> Neighborhood:
    return g.neighbors(v)


def cached_oracle(fn: Callable[[Token], Neighborhood], maxsize: int = 1 << 16):
    """Memoize a pure oracle; composite generators query inner oracles repeatedly."""
    return functools.lru_cache(maxsize=maxsize)(fn)


def declared_line(g: GraphGenerator) -> DeclaredLine:
    if g.line is None:
        raise UnsupportedError(f"{g.label} has no declared line")
    return g.line


def underlying_undirected(g: GraphGenerator) -> GraphGenerator:
    """Erase arc orientations and keep colors."""
    if not g.oriented:
        raise PreconditionError(f"{g.label} is not arc-oriented")

    def oracle(v):
        return tuple((w, EdgeDecoration(d.color)) for w, d in g.oracle(v))

    return replace(
        g,
        family=f"{g.label} | undirected",
        params={},
        oracle=cached_oracle(oracle),
        oriented=False,
        in_degree=None,
        out_degree=None,
        expected_quotient=None,
    )


def reverse(g: GraphGenerator) -> GraphGenerator:
    """Reverse every arc. The declared line is traversed backwards."""
    if not g.oriented:
        raise PreconditionError(f"{g.label} is not arc-oriented")

    def oracle(v):
        return tuple((w, d.reversed()) for w, d in g.oracle(v))

    line = None
    if g.line is not None:
        src = g.line.vertex
        line = DeclaredLine(lambda k: src(-k), g.line.alternating)
    return replace(
        g,
        family=f"{g.label} | reverse",
        params={},
        oracle=cached_oracle(oracle),
        in_degree=g.out_degree,
        out_degree=g.in_degree,
        line=line,
        expected_quotient=None,
    )


def out_neighbors(g: GraphGenerator, v: Token) -> list[Token]:
    return [w for w, d in g.neighbors(v) if d.orientation is Orientation.FORWARD]


def in_neighbors(g: GraphGenerator, v: Token) -> list[Token]:
    return [w for w, d in g.neighbors(v) if d.orientation is Orientation.BACKWARD]


def red_neighbor(g: GraphGenerator, v: Token) -> Token:
    reds = [w for w, d in g.neighbors(v) if d.color is Color.RED]
    if len(reds) != 1:
        raise PreconditionError(f"{format_token(v)} has {len(reds)} red edges, expected 1")
    return reds[0]


def check_neighborhood(g: GraphGenerator, v: Token) -> list[str]:
    """Return the generator-contract violations visible from ``v``.

    Checks declared degree, loops, repeated neighbors, decoration signature
    and that every neighbor lists ``v`` back with the reversed decoration.
    """
    problems = []
    nb: Sequence = g.neighbors(v)
    tag = format_token(v)
    if len(nb) != g.degree:
        problems.append(f"{tag}: degree {len(nb)} != declared {g.degree}")
    seen = set()
    for w, d in nb:
        if w == v:
            problems.append(f"{tag}: loop")
        if w in seen:
            problems.append(f"{tag}: repeated neighbor {format_token(w)}")
        seen.add(w)
        if g.colored != (d.color is not Color.NONE):
            problems.append(f"{tag}: edge to {format_token(w)} breaks the color signature")
        if g.oriented != (d.orientation is not Orientation.UNDIRECTED):
            problems.append(f"{tag}: edge to {format_token(w)} breaks the orientation signature")
        back = [e for u, e in g.neighbors(w) if u == v]
        if back != [d.reversed()]:
            problems.append(f"{tag}: edge to {format_token(w)} is not mirrored")
    if g.oriented:
        n_out = sum(d.orientation is Orientation.FORWARD for _, d in nb)
        n_in = len(nb) - n_out
        if g.out_degree is not None and n_out != g.out_degree:
            problems.append(f"{tag}: out-degree {n_out} != declared {g.out_degree}")
        if g.in_degree is not None and n_in != g.in_degree:
            problems.append(f"{tag}: in-degree {n_in} != declared {g.in_degree}")
    return problems
