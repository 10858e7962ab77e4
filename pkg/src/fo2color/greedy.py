"""Greedy defective coloring and the linear-time FO 2-coloring for max
degree 5.

The recoloring loop starts with all vertices the same color and repeatedly
fixes a vertex with more than floor(max_degree / k) same-colored incident
edge endpoints; by pigeonhole a color under the bound always exists, and
each step strictly reduces the number of monochromatic edges, so at most
|E| recolorings happen. Parallel edges count with multiplicity throughout,
which keeps induced multigraph degrees bounded.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _core
from .graph import Multigraph
from .orientation import FunctionalOrientation, orient_for_coloring


@dataclass(frozen=True)
class GreedyTrace:
    """Recoloring trace: final colors plus the monochromatic-edge count
    after every recoloring step (strictly decreasing)."""

    colors: list[int]
    potentials: list[int]


def defective_coloring_trace(g: Multigraph, k: int) -> GreedyTrace:
    if k < 1:
        raise ValueError("k must be positive")
    bound = g.max_degree() // k
    indptr, adj_v, _ = g.csr()
    colors, pots = _core.greedy_defective(g.vertex_count, k, bound, indptr, adj_v)
    return GreedyTrace(colors=colors.tolist(), potentials=pots.tolist())


def defective_coloring(g: Multigraph, k: int) -> list[int]:
    """k-coloring in which every vertex has at most floor(max_degree / k)
    same-colored incident edge endpoints."""
    return defective_coloring_trace(g, k).colors


def fo2color_delta5(g: Multigraph) -> tuple[list[int], FunctionalOrientation]:
    """FO 2-coloring plus matching orientation for a graph of maximum
    degree at most 5, in linear time.

    The 2-coloring with defect bound floor(5/2) = 2 leaves induced
    subgraphs of maximum degree <= 2 (paths, cycles, doubled edges), all
    acyclic or unicyclic, so the orientation always exists.
    """
    if g.max_degree() > 5:
        raise ValueError(f"maximum degree {g.max_degree()} exceeds 5")
    coloring = defective_coloring(g, 2)
    orientation = orient_for_coloring(g, coloring)
    return coloring, orientation


def random_multigraph(n: int, max_degree: int, seed: int, fill: float = 0.66) -> Multigraph:
    """Seeded random loopless multigraph respecting the degree cap with
    multiplicity counting. Deterministic for fixed arguments.

    Draws round(n * max_degree * fill / 2) candidate pairs in bulk and
    keeps those that respect the cap, so the edge count varies slightly
    with the seed but the process is reproducible.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be non-negative")
    rng = np.random.default_rng(seed)
    target = int(round(n * max_degree * fill / 2))
    if n < 2 or max_degree == 0 or target == 0:
        return Multigraph(n)
    cand = rng.integers(0, n, size=(2 * target + 16, 2), dtype=np.int64)
    cand = cand[cand[:, 0] != cand[:, 1]]
    deg = [0] * n
    us = []
    vs = []
    for u, v in cand.tolist():
        if len(us) >= target:
            break
        if deg[u] < max_degree and deg[v] < max_degree:
            deg[u] += 1
            deg[v] += 1
            us.append(u)
            vs.append(v)
    return Multigraph.from_edges(
        n, (np.array(us, dtype=np.int64), np.array(vs, dtype=np.int64))
    )
