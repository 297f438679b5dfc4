"""Time the numba kernels against the numpy / interpreted fallback.

    python benchmarks/bench_kernels.py --radius 9 --repeat 5
"""

from __future__ import annotations

import argparse
import statistics
import time

import numpy as np

from triact import _kernels, ball, make
from triact.autos import _Prepared


def _time(fn, repeat: int) -> float:
    fn()  # warm-up, includes numba compilation on first use
    runs = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        runs.append(time.perf_counter() - t0)
    return statistics.median(runs)


def bench(family: str, radius: int, repeat: int) -> list[tuple]:
    b = ball(make(family), None, radius)
    ctx = _Prepared(b)
    init = np.zeros(b.n, np.uint64)
    init[0] = 1
    cols = ctx.refine([])
    mask = b.depth >= radius // 3
    rows = []
    for name in ("numpy", "numba"):
        mod = _kernels.backend(name)
        search_args = (ctx.indptr, ctx.indices, ctx.codes, cols, ctx.parent, ctx.pcode,
                       ctx.indptr, ctx.indices, ctx.codes, cols, False, 10 ** 7)
        rows.append((family, b.n, name,
                     _time(lambda: mod.refine_colors(ctx.indptr, ctx.indices, ctx.codes, init), repeat),
                     _time(lambda: mod.search(*search_args), repeat),
                     _time(lambda: mod.label_components(b.indptr, b.indices, mask), repeat)))
    return rows


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--families", nargs="+", default=["t3", "colored-t3", "theta(2)"])
    ap.add_argument("--radius", type=int, default=9)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    print(f"{'family':<12}{'n':>8}  {'backend':<8}{'refine ms':>11}{'search ms':>11}{'components ms':>15}")
    for f in args.families:
        for fam, n, name, r, s, c in bench(f, args.radius, args.repeat):
            print(f"{fam:<12}{n:>8}  {name:<8}{r * 1e3:>11.2f}{s * 1e3:>11.2f}{c * 1e3:>15.2f}")


if __name__ == "__main__":
    main()
