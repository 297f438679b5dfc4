import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from triact import _kernels, ball, make
from triact.autos import _Prepared

numba_mod = pytest.importorskip("numba")
NP = _kernels.backend("numpy")
NB = _kernels.backend("numba")


def _csr(n, pairs):
    nb = [[] for _ in range(n)]
    for u, v in pairs:
        if u != v and v not in nb[u]:
            nb[u].append(v)
            nb[v].append(u)
    indptr = np.zeros(n + 1, np.int64)
    indptr[1:] = np.cumsum([len(x) for x in nb])
    indices = np.array([w for x in nb for w in sorted(x)], np.int64)
    return indptr, indices


graphs = st.integers(1, 25).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=60)))


@settings(max_examples=60, deadline=None)
@given(graphs, st.integers(0, 3))
def test_refine_parity(g, seed):
    n, pairs = g
    indptr, indices = _csr(n, pairs)
    rng = np.random.default_rng(seed)
    codes = rng.integers(0, 4, indices.size).astype(np.uint64)
    init = rng.integers(0, 3, n).astype(np.uint64)
    assert np.array_equal(NP.refine_colors(indptr, indices, codes, init),
                          NB.refine_colors(indptr, indices, codes, init))


@settings(max_examples=60, deadline=None)
@given(graphs, st.integers(0, 3))
def test_components_parity(g, seed):
    n, pairs = g
    indptr, indices = _csr(n, pairs)
    mask = np.random.default_rng(seed).random(n) < 0.7
    a = NP.label_components(indptr, indices, mask)
    b = NB.label_components(indptr, indices, mask)
    assert np.array_equal(a, b)
    # labels are component minima
    for v in np.flatnonzero(mask):
        assert a[v] <= v and mask[a[v]]


@pytest.mark.parametrize("family", ["t3", "theta(1)", "oriented-t3", "joined-ngons(3)"])
def test_search_parity(family):
    b = ball(make(family), None, 4)
    ctx = _Prepared(b)
    cols = ctx.refine([])
    args = (ctx.indptr, ctx.indices, ctx.codes, cols, ctx.parent, ctx.pcode,
            ctx.indptr, ctx.indices, ctx.codes, cols)
    for prefer in (True, False):
        ra = NP.search(*args, prefer, 10 ** 6)
        rb = NB.search(*args, prefer, 10 ** 6)
        assert ra[0] == rb[0] == 1
        assert np.array_equal(ra[1], rb[1]) and ra[2] == rb[2]


def test_search_budget():
    b = ball(make("t3"), None, 5)
    ctx = _Prepared(b)
    cols = np.zeros(b.n, np.uint64)  # no refinement: forces deep backtracking
    cols[0] = 1
    args = (ctx.indptr, ctx.indices, ctx.codes, cols, ctx.parent, ctx.pcode,
            ctx.indptr, ctx.indices, ctx.codes, cols)
    for mod in (NP, NB):
        status, _, nodes = mod.search(*args, False, 3)
        assert status in (-1, 1) and nodes <= 4


def test_numba_disabled_subprocess():
    env = dict(os.environ, TRIACT_NUMBA="0")
    code = ("import triact._kernels as k, triact as t;"
            "from triact.autos import classify_case;"
            "print(k.BACKEND, classify_case(t.make('theta(1)'), 3))")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True,
                         check=True).stdout.split()
    assert out == ["numpy", "CaseC"]


def test_benchmark_runs(capsys):
    import importlib.util
    import pathlib

    path = pathlib.Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernels.py"
    spec = importlib.util.spec_from_file_location("bench_kernels", path)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    mod.main(["--families", "theta(1)", "--radius", "4", "--repeat", "1"])
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 3 and "numba" in lines[2]
