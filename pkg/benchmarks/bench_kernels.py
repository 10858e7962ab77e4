#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure Python fallback.

Runs the three hot kernels (greedy recoloring, component labeling,
orientation construction) plus the end-to-end max-degree-5 pipeline on
seeded random multigraphs of growing size and prints a timing table.

Usage: python3 benchmarks/bench_kernels.py [--sizes 100000,1000000]
"""

import argparse
import time

import numpy as np

from fo2color._core import _kernels_py

try:
    from fo2color._core import _speedups
except ImportError:
    _speedups = None

from fo2color.greedy import random_multigraph
from fo2color.orientation import _component_data


def _kernel_inputs(g):
    indptr, adj_v, adj_e = g.csr()
    eu, ev = g.endpoint_arrays()
    labels, vcnt, ecnt = _component_data(g, None)
    ids = np.arange(g.edge_count, dtype=np.int64)
    min_edge = np.full(g.vertex_count, g.edge_count, dtype=np.int64)
    if g.edge_count:
        np.minimum.at(min_edge, labels[eu], ids)
    tree_roots = (vcnt > 0) & (ecnt >= 1) & (ecnt - vcnt + 1 == 0)
    anchors = min_edge[tree_roots]
    return indptr, adj_v, adj_e, eu, ev, anchors


def _time(fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_size(n, seed=7):
    g = random_multigraph(n, 5, seed)
    indptr, adj_v, adj_e, eu, ev, anchors = _kernel_inputs(g)
    bound = g.max_degree() // 2

    # Orientation benchmarks need a feasible graph; a max-degree-2 one is.
    g2 = random_multigraph(n, 2, seed)
    i2, av2, ae2, eu2, ev2, anc2 = _kernel_inputs(g2)

    rows = []
    backends = [("python", _kernels_py)]
    if _speedups is not None:
        backends.append(("compiled", _speedups))
    for name, impl in backends:
        t_greedy = _time(lambda: impl.greedy_defective(g.vertex_count, 2, bound, indptr, adj_v))
        t_uf = _time(lambda: impl.uf_labels(g.vertex_count, eu, ev, None))
        t_orient = _time(
            lambda: impl.orient_marks(
                g2.vertex_count, i2, av2, ae2, eu2, ev2, anc2, g2.edge_count
            )
        )
        rows.append((name, t_greedy, t_uf, t_orient))
    return g, rows


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="100000,1000000")
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    print(f"{'vertices':>10} {'backend':>9} {'greedy':>9} {'uf_labels':>10} {'orient':>9}")
    for n in sizes:
        g, rows = bench_size(n)
        base = {}
        for name, t_greedy, t_uf, t_orient in rows:
            base.setdefault("greedy", t_greedy)
            base.setdefault("uf", t_uf)
            base.setdefault("orient", t_orient)
            speed = (
                ""
                if name == "python"
                else (
                    f"   ({base['greedy'] / t_greedy:4.1f}x, "
                    f"{base['uf'] / t_uf:4.1f}x, {base['orient'] / t_orient:4.1f}x)"
                )
            )
            print(
                f"{g.vertex_count:>10} {name:>9} {t_greedy:>8.3f}s {t_uf:>9.3f}s "
                f"{t_orient:>8.3f}s{speed}"
            )
    if _speedups is None:
        print("\ncompiled kernels not built; run: python3 setup.py build_ext --inplace")


if __name__ == "__main__":
    main()
