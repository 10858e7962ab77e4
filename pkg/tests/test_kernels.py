"""Backend parity: the compiled kernels must reproduce the pure Python
reference bit for bit."""

import numpy as np
import pytest

from fo2color._core import _kernels_py

try:
    from fo2color._core import _speedups
except ImportError:
    _speedups = None

from fo2color import Multigraph
from fo2color.greedy import random_multigraph

needs_compiled = pytest.mark.skipif(_speedups is None, reason="compiled kernels not built")


def _graphs():
    for seed in range(8):
        yield random_multigraph(int(30 + 40 * seed), 5, seed)
    yield Multigraph(5)
    yield Multigraph.from_edges(2, [(0, 1)] * 3)
    yield Multigraph.from_edges(6, [(0, 1), (0, 1), (2, 3), (4, 5), (4, 5), (4, 5)])


@needs_compiled
def test_greedy_parity():
    for g in _graphs():
        indptr, adj_v, _ = g.csr()
        for k in (1, 2, 3):
            bound = g.max_degree() // k
            c_py, p_py = _kernels_py.greedy_defective(g.vertex_count, k, bound, indptr, adj_v)
            c_c, p_c = _speedups.greedy_defective(g.vertex_count, k, bound, indptr, adj_v)
            assert np.array_equal(c_py, c_c)
            assert np.array_equal(p_py, p_c)


@needs_compiled
def test_uf_labels_parity():
    rng = np.random.default_rng(0)
    for g in _graphs():
        eu, ev = g.endpoint_arrays()
        for active in (None, rng.integers(0, 2, size=g.edge_count).astype(np.uint8)):
            l_py = _kernels_py.uf_labels(g.vertex_count, eu, ev, active)
            l_c = _speedups.uf_labels(g.vertex_count, eu, ev, active)
            assert np.array_equal(l_py, l_c)


def _pseudoforest(n, seed):
    """Random graph whose components are trees or unicyclic: paths, cycles,
    doubled edges and hanging trees, i.e. exactly what the orientation
    kernel sees in production."""
    rng = np.random.default_rng(seed)
    edges = []
    v = 0
    while v + 2 < n:
        size = int(rng.integers(2, min(9, n - v)))
        verts = list(range(v, v + size))
        shuffled = list(rng.permutation(verts))
        for a, b in zip(shuffled, shuffled[1:]):  # spanning path
            edges.append((int(a), int(b)))
        style = int(rng.integers(0, 3))
        if style == 1 and size >= 3:  # close a cycle
            edges.append((int(shuffled[0]), int(shuffled[-1])))
        elif style == 2:  # double one edge: a 2-cycle
            edges.append(edges[-1])
        v += size
    return Multigraph.from_edges(n, edges)


@needs_compiled
def test_orient_marks_parity():
    from fo2color import FunctionalOrientation, build_full_orientation, check_orientation
    from fo2color.orientation import _component_data

    tested = 0
    for seed in range(12):
        g = _pseudoforest(40 + 13 * seed, seed)
        labels, vcnt, ecnt = _component_data(g, None)
        assert not ((vcnt > 0) & (ecnt - vcnt + 1 >= 2)).any()
        eu, ev = g.endpoint_arrays()
        indptr, adj_v, adj_e = g.csr()
        ids = np.arange(g.edge_count, dtype=np.int64)
        min_edge = np.full(g.vertex_count, g.edge_count, dtype=np.int64)
        if g.edge_count:
            np.minimum.at(min_edge, labels[eu], ids)
        tree_roots = (vcnt > 0) & (ecnt >= 1) & (ecnt - vcnt + 1 == 0)
        anchors = min_edge[tree_roots]
        m_py = _kernels_py.orient_marks(
            g.vertex_count, indptr, adj_v, adj_e, eu, ev, anchors, g.edge_count
        )
        m_c = _speedups.orient_marks(
            g.vertex_count, indptr, adj_v, adj_e, eu, ev, anchors, g.edge_count
        )
        assert np.array_equal(m_py, m_c)
        assert check_orientation(g, FunctionalOrientation(m_py), require_full=True)
        assert build_full_orientation(g) == FunctionalOrientation(m_c)
        tested += 1
    assert tested == 12


@needs_compiled
def test_full_pipeline_parity(monkeypatch):
    # fo2color_delta5 output must not depend on the backend.
    import subprocess
    import sys

    code = (
        "import json\n"
        "from fo2color.greedy import random_multigraph, fo2color_delta5\n"
        "g = random_multigraph(500, 5, 123)\n"
        "c, o = fo2color_delta5(g)\n"
        "print(json.dumps([c, o.marks.tolist()]))\n"
    )
    res_default = subprocess.run(
        [sys.executable, "-c", code], capture_output=True, text=True, check=True
    )
    import os

    env = dict(os.environ, FO2_PURE_KERNELS="1")
    res_pure = subprocess.run(
        [sys.executable, "-c", code], capture_output=True, text=True, check=True, env=env
    )
    assert res_default.stdout == res_pure.stdout


def test_backend_reports_a_name():
    from fo2color import kernel_backend

    assert kernel_backend() in ("compiled", "python")
