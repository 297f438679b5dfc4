"""numba-compiled kernels; same signatures and results as ``_numpy``."""

from __future__ import annotations

import numpy as np
from numba import njit

from triact._kernels import _search_src

_K1 = np.uint64(0x9E3779B97F4A7C15)
_K2 = np.uint64(0xC2B2AE3D27D4EB4F)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_S30, _S27, _S31 = np.uint64(30), np.uint64(27), np.uint64(31)


@njit(cache=True)
def _mix(x):
    x = (x ^ (x >> _S30)) * _M1
    x = (x ^ (x >> _S27)) * _M2
    return x ^ (x >> _S31)


@njit(cache=True)
def _n_distinct(a):
    return np.unique(a).size


@njit(cache=True)
def _refine(indptr, indices, codes, colors):
    n = colors.shape[0]
    n_cls = _n_distinct(colors)
    new = np.empty(n, np.uint64)
    while True:
        for v in range(n):
            acc = np.uint64(0)
            for k in range(indptr[v], indptr[v + 1]):
                acc += _mix(colors[indices[k]] * _K1 + codes[k])
            new[v] = _mix(colors[v] * _K2 + acc)
        k = _n_distinct(new)
        if k == n_cls:
            return colors
        colors, new = new, colors
        n_cls = k


def refine_colors(indptr, indices, codes, init):
    colors = np.array(init, dtype=np.uint64)
    return _refine(indptr, indices, np.ascontiguousarray(codes, dtype=np.uint64), colors)


@njit(cache=True)
def label_components(indptr, indices, mask):
    n = mask.shape[0]
    labels = np.full(n, -1, np.int64)
    stack = np.empty(n, np.int64)
    for s in range(n):
        if not mask[s] or labels[s] >= 0:
            continue
        labels[s] = s
        top = 0
        stack[0] = s
        while top >= 0:
            v = stack[top]
            top -= 1
            for k in range(indptr[v], indptr[v + 1]):
                w = indices[k]
                if mask[w] and labels[w] < 0:
                    labels[w] = s
                    top += 1
                    stack[top] = w
    return labels


_consistent = njit(cache=True)(_search_src.consistent)
_extend = njit(cache=True)(_search_src.extend_search)


def search(indptr_a, ind_a, code_a, col_a, parent, pcode,
           indptr_b, ind_b, code_b, col_b, prefer_identity, node_budget):
    return _extend(indptr_a, ind_a, code_a, col_a, parent, pcode,
                   indptr_b, ind_b, code_b, col_b, prefer_identity, node_budget, _consistent)
