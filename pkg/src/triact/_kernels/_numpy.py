"""Vectorized reference kernels (used when numba is disabled or missing)."""

from __future__ import annotations

import numpy as np

from triact._kernels._search_src import consistent, extend_search

K1 = np.uint64(0x9E3779B97F4A7C15)
K2 = np.uint64(0xC2B2AE3D27D4EB4F)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_S30, _S27, _S31 = np.uint64(30), np.uint64(27), np.uint64(31)


def mix(x: np.ndarray) -> np.ndarray:
    # splitmix64 finalizer; uint64 arithmetic wraps
    x = (x ^ (x >> _S30)) * _M1
    x = (x ^ (x >> _S27)) * _M2
    return x ^ (x >> _S31)


def refine_colors(indptr, indices, codes, init):
    """Hashed color refinement to the coarsest equitable partition.

    Returns uint64 colors; equal inputs (up to isomorphism) give equal values,
    so separately refined balls can be compared color by color.
    """
    colors = np.ascontiguousarray(init, dtype=np.uint64)
    codes = np.ascontiguousarray(codes, dtype=np.uint64)
    n_cls = np.unique(colors).size
    cs = np.zeros(indices.size + 1, np.uint64)
    while True:
        key = mix(colors[indices] * K1 + codes)
        np.cumsum(key, out=cs[1:])
        acc = cs[indptr[1:]] - cs[indptr[:-1]]
        new = mix(colors * K2 + acc)
        k = np.unique(new).size
        if k == n_cls:
            return colors
        colors, n_cls = new, k


def label_components(indptr, indices, mask):
    """Component labels of the subgraph induced by ``mask`` (-1 outside it).

    Labels are the smallest vertex index of each component.
    """
    n = mask.size
    rows = np.repeat(np.arange(n), np.diff(indptr))
    live = mask[rows] & mask[indices]
    rows, cols = rows[live], indices[live].astype(np.int64)
    labels = np.arange(n, dtype=np.int64)
    while True:
        prev = labels.copy()
        np.minimum.at(labels, rows, labels[cols])
        labels = labels[labels]
        if np.array_equal(labels, prev):
            break
    labels[~mask] = -1
    return labels


def search(indptr_a, ind_a, code_a, col_a, parent, pcode,
           indptr_b, ind_b, code_b, col_b, prefer_identity, node_budget):
    return extend_search(indptr_a, ind_a, code_a, col_a, parent, pcode,
                         indptr_b, ind_b, code_b, col_b, prefer_identity, node_budget, consistent)
