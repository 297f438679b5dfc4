"""Small permutation-group utilities on tuples ``p`` with ``i -> p[i]``.

Products apply left to right: ``mul(p, q)`` is "p, then q".
"""

from __future__ import annotations

from collections import deque
from math import prod
from typing import Iterable, Sequence

Perm = tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(n))


def mul(p: Perm, q: Perm) -> Perm:
    return tuple(q[i] for i in p)


def inv(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def is_identity(p: Perm) -> bool:
    return all(i == j for i, j in enumerate(p))


def orbit(point: int, gens: Sequence[Perm]) -> list[int]:
    seen = {point}
    queue = deque([point])
    out = [point]
    while queue:
        x = queue.popleft()
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                out.append(y)
                queue.append(y)
    return out


def elements(gens: Sequence[Perm], n: int, limit: int = 100_000) -> set[Perm]:
    """All elements of the generated group (for small groups only)."""
    e = identity(n)
    seen = {e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = mul(x, g)
            if y not in seen:
                seen.add(y)
                if len(seen) > limit:
                    raise OverflowError(f"group has more than {limit} elements")
                queue.append(y)
    return seen


class _Level:
    __slots__ = ("point", "trans")

    def __init__(self, point: int):
        self.point = point
        self.trans: dict[int, Perm] = {}


def _transversal(point: int, gens: Sequence[Perm], n: int) -> dict[int, Perm]:
    trans = {point: identity(n)}
    queue = deque([point])
    while queue:
        x = queue.popleft()
        ux = trans[x]
        for g in gens:
            y = g[x]
            if y not in trans:
                trans[y] = mul(ux, g)
                queue.append(y)
    return trans


class StabilizerChain:
    """Deterministic Schreier-Sims: base, strong generators, transversals."""

    def __init__(self, gens: Iterable[Perm], n: int):
        self.n = n
        self.strong: list[Perm] = []
        self.levels: list[_Level] = []
        for g in gens:
            g = tuple(g)
            if not is_identity(g):
                self.strong.append(g)
                if all(g[lv.point] == lv.point for lv in self.levels):
                    self.levels.append(_Level(next(i for i in range(n) if g[i] != i)))
        self._build()

    def _gens_at(self, i: int) -> list[Perm]:
        fixed = [lv.point for lv in self.levels[:i]]
        return [s for s in self.strong if all(s[b] == b for b in fixed)]

    def _refresh(self, i: int) -> None:
        lv = self.levels[i]
        lv.trans = _transversal(lv.point, self._gens_at(i), self.n)

    def strip(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            x = g[lv.point]
            if x not in lv.trans:
                return g, i
            g = mul(g, inv(lv.trans[x]))
        return g, len(self.levels)

    def _build(self) -> None:
        for i in range(len(self.levels)):
            self._refresh(i)
        i = len(self.levels) - 1
        while i >= 0:
            restart = False
            gens = self._gens_at(i)
            lv = self.levels[i]
            for beta, u in list(lv.trans.items()):
                for s in gens:
                    y = mul(mul(u, s), inv(lv.trans[s[beta]]))
                    if is_identity(y):
                        continue
                    h, j = self.strip(y, i + 1)
                    if j < len(self.levels) or not is_identity(h):
                        if j == len(self.levels):
                            self.levels.append(_Level(next(k for k in range(self.n) if h[k] != k)))
                        self.strong.append(h)
                        for l in range(i + 1, j + 1):
                            self._refresh(l)
                        i = j
                        restart = True
                        break
                if restart:
                    break
            if not restart:
                i -= 1

    @property
    def base(self) -> list[int]:
        return [lv.point for lv in self.levels]

    def order(self) -> int:
        return prod(len(lv.trans) for lv in self.levels)

    def contains(self, g: Perm) -> bool:
        h, j = self.strip(tuple(g))
        return j == len(self.levels) and is_identity(h)


def group_order(gens: Iterable[Perm], n: int) -> int:
    return StabilizerChain(gens, n).order()
