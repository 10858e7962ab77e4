"""Shared test fixtures: reference graphs and independent brute-force
oracles. The oracles stay definition-level (no cyclomatic shortcuts) so
they can arbitrate the production paths."""

import itertools

import pytest

from fo2color import Multigraph


def triangle_graph():
    return Multigraph.from_edges(3, [(0, 1), (1, 2), (2, 0)])


def two_triangle_graph():
    """The maximum-degree-5 example graph: doubled inner triangle (0,1,2),
    doubled outer triangle (3,4,5), one spoke per inner vertex."""
    edges = [
        (0, 1), (0, 1),
        (1, 2), (1, 2),
        (2, 0), (2, 0),
        (3, 4), (3, 4),
        (4, 5), (4, 5),
        (5, 3), (5, 3),
        (0, 3),
        (1, 4),
        (2, 5),
    ]
    return Multigraph.from_edges(6, edges)


# A coloring that works: inner 0, inner 1 and outer 5 in one class.
VALID_COLORING = [1, 1, 0, 0, 0, 1]
# Inner triangle vs outer triangle: both classes induce cyclomatic 4.
INVALID_COLORING = [1, 1, 1, 0, 0, 0]


def tripled_triangle_graph():
    """Three vertices, every edge tripled: not FO 2-colorable."""
    edges = []
    for u, v in [(0, 1), (1, 2), (2, 0)]:
        edges += [(u, v)] * 3
    return Multigraph.from_edges(3, edges)


def petersen_graph():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, 5 + i) for i in range(5)]
    return Multigraph.from_edges(10, outer + inner + spokes)


def complete_graph(n):
    return Multigraph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def brute_full_orientation_exists(g):
    """Definition-level search over full direction-mark vectors: every edge
    gets fwd/rev/both, every non-isolated vertex must end with exactly one
    outgoing edge. Independent of any cycle-space reasoning."""
    n = g.vertex_count
    edges = g.edges
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    out = [0] * n
    remaining = [0] * n  # half-edges not yet marked, for pruning
    for u, v in edges:
        remaining[u] += 1
        remaining[v] += 1

    def rec(i):
        if i == len(edges):
            return all(out[v] == 1 for v in range(n) if deg[v] > 0)
        u, v = edges[i]
        remaining[u] -= 1
        remaining[v] -= 1
        try:
            for du, dv in ((1, 0), (0, 1), (1, 1)):
                out[u] += du
                out[v] += dv
                if (
                    out[u] <= 1
                    and out[v] <= 1
                    and (remaining[u] > 0 or out[u] == 1)
                    and (remaining[v] > 0 or out[v] == 1)
                ):
                    if rec(i + 1):
                        return True
                out[u] -= du
                out[v] -= dv
            return False
        finally:
            remaining[u] += 1
            remaining[v] += 1

    return rec(0)


def is_fo2coloring_by_definition(g, coloring):
    """Check a coloring by searching full orientations of each induced
    monochromatic subgraph (definition-level, per the brute oracle)."""
    from fo2color import induced_subgraph

    for color in (0, 1):
        sub, _ = induced_subgraph(g, coloring, color)
        if not brute_full_orientation_exists(sub):
            return False
    return True


def enumerate_fo2_colorings(g):
    """All FO 2-colorings by plain 2^v enumeration over the verifier, in
    lexicographic order of the coloring sequence (vertex 0 most
    significant)."""
    from fo2color import is_fo2coloring

    n = g.vertex_count
    found = []
    for bits in range(1 << n):
        coloring = [(bits >> (n - 1 - v)) & 1 for v in range(n)]
        if is_fo2coloring(g, coloring):
            found.append(coloring)
    return found


def check_induced_orientations(g, coloring, orientation):
    """The per-subgraph contract: restricted to either induced
    monochromatic subgraph, the orientation is full and functional."""
    from fo2color import FunctionalOrientation, check_orientation, induced_subgraph

    for color in (0, 1):
        sub, mapping = induced_subgraph(g, coloring, color)
        hosts = set(mapping)
        marks = [
            int(orientation.marks[e])
            for e, (u, v) in enumerate(g.edges)
            if u in hosts and v in hosts
        ]
        if not check_orientation(sub, FunctionalOrientation(marks), require_full=True):
            return False
    return True


def all_assignments(num_vars):
    return itertools.product((False, True), repeat=num_vars)


@pytest.fixture
def two_triangles():
    return two_triangle_graph()


@pytest.fixture
def triple_triangle():
    return tripled_triangle_graph()
