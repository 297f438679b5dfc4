"""Backtracking extension of a rooted isomorphism between two balls.

Written in the numba-compatible subset of Python: the same function is
compiled with ``njit`` or run as-is by the fallback backend.

Vertices of ball A are mapped in index order. Index order is BFS order, so
every vertex ``x > 0`` has an already mapped ``parent[x]`` and its image must
be a neighbor of the parent's image reached by an incidence with code
``pcode[x]``. A candidate is accepted when colors agree and the mapped part
of its neighborhood matches that of ``x`` exactly.
"""

import numpy as np


def consistent(x, y, indptr_a, ind_a, code_a, indptr_b, ind_b, code_b, map_ab, map_ba):
    cnt_a = 0
    for ka in range(indptr_a[x], indptr_a[x + 1]):
        z = ind_a[ka]
        mz = map_ab[z]
        if mz < 0:
            continue
        cnt_a += 1
        ok = False
        for kb in range(indptr_b[y], indptr_b[y + 1]):
            if ind_b[kb] == mz:
                ok = code_b[kb] == code_a[ka]
                break
        if not ok:
            return False
    cnt_b = 0
    for kb in range(indptr_b[y], indptr_b[y + 1]):
        if map_ba[ind_b[kb]] >= 0:
            cnt_b += 1
    return cnt_a == cnt_b


def extend_search(indptr_a, ind_a, code_a, col_a, parent, pcode,
            indptr_b, ind_b, code_b, col_b, prefer_identity, node_budget, consistent):
    """Return ``(status, map_ab, nodes)``; status 1 found, 0 none, -1 budget hit."""
    n = col_a.shape[0]
    map_ab = np.full(n, -1, np.int64)
    map_ba = np.full(n, -1, np.int64)
    nodes = 0
    if n == 0:
        return 1, map_ab, nodes
    if col_a[0] != col_b[0]:
        return 0, map_ab, nodes
    map_ab[0] = 0
    map_ba[0] = 0
    # -2: untouched, -1: identity tried, k >= 0: next incidence of the parent image
    slot = np.full(n, -2, np.int64)
    x = 1
    while x > 0:
        if x == n:
            return 1, map_ab, nodes
        y_old = map_ab[x]
        if y_old >= 0:
            map_ba[y_old] = -1
            map_ab[x] = -1
        mp = map_ab[parent[x]]
        lo = indptr_b[mp]
        hi = indptr_b[mp + 1]
        placed = False
        if slot[x] == -2:
            slot[x] = lo
            if prefer_identity:
                slot[x] = -1
                for k in range(lo, hi):
                    if ind_b[k] == x:
                        nodes += 1
                        if (col_b[x] == col_a[x] and map_ba[x] < 0 and code_b[k] == pcode[x]
                                and consistent(x, x, indptr_a, ind_a, code_a,
                                                indptr_b, ind_b, code_b, map_ab, map_ba)):
                            map_ab[x] = x
                            map_ba[x] = x
                            placed = True
                        break
        if not placed:
            k = slot[x]
            if k == -1:
                k = lo
            while k < hi:
                y = ind_b[k]
                k += 1
                if prefer_identity and y == x:
                    continue
                if col_b[y] != col_a[x] or map_ba[y] >= 0 or code_b[k - 1] != pcode[x]:
                    continue
                nodes += 1
                if nodes > node_budget:
                    return -1, map_ab, nodes
                if consistent(x, y, indptr_a, ind_a, code_a, indptr_b, ind_b, code_b,
                               map_ab, map_ba):
                    map_ab[x] = y
                    map_ba[y] = x
                    placed = True
                    break
            slot[x] = k
        if placed:
            x += 1
        else:
            slot[x] = -2
            x -= 1
    return 0, map_ab, nodes
