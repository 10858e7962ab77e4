"""Loopless undirected multigraph with stable edge identities.

Vertices are dense integers starting at 0. Edges keep their insertion
order and declared endpoint order; the edge id is the position in that
sequence. Parallel edges are allowed everywhere and count with
multiplicity (degrees, components, cyclomatic numbers).
"""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx
import numpy as np

from . import _core

_INITIAL_CAPACITY = 16


class Multigraph:
    """Growable edge list over a fixed vertex range.

    Queries are read-only and safe for concurrent readers once construction
    is done; add_edge is single-writer and invalidates cached adjacency.
    """

    __slots__ = ("_n", "_m", "_eu", "_ev", "_deg", "_csr")

    def __init__(self, vertex_count: int = 0):
        if vertex_count < 0:
            raise ValueError("vertex_count must be non-negative")
        self._n = int(vertex_count)
        self._m = 0
        self._eu = np.empty(_INITIAL_CAPACITY, dtype=np.int64)
        self._ev = np.empty(_INITIAL_CAPACITY, dtype=np.int64)
        self._deg = np.zeros(self._n, dtype=np.int64)
        self._csr = None

    @classmethod
    def from_edges(cls, vertex_count, edges) -> "Multigraph":
        """Bulk constructor; edges is an iterable of (u, v) pairs or a pair
        of endpoint arrays."""
        g = cls(vertex_count)
        if isinstance(edges, tuple) and len(edges) == 2 and isinstance(edges[0], np.ndarray):
            eu = np.asarray(edges[0], dtype=np.int64)
            ev = np.asarray(edges[1], dtype=np.int64)
        else:
            pairs = list(edges)
            eu = np.array([p[0] for p in pairs], dtype=np.int64)
            ev = np.array([p[1] for p in pairs], dtype=np.int64)
        if eu.shape != ev.shape:
            raise ValueError("endpoint arrays differ in length")
        if len(eu):
            if eu.min() < 0 or ev.min() < 0 or eu.max() >= vertex_count or ev.max() >= vertex_count:
                raise ValueError("edge endpoint out of range")
            if (eu == ev).any():
                bad = int(np.nonzero(eu == ev)[0][0])
                raise ValueError(f"loop edge ({int(eu[bad])}, {int(ev[bad])}) not allowed")
        g._eu = eu.copy()
        g._ev = ev.copy()
        g._m = len(eu)
        np.add.at(g._deg, eu, 1)
        np.add.at(g._deg, ev, 1)
        return g

    @property
    def vertex_count(self) -> int:
        return self._n

    @property
    def edge_count(self) -> int:
        return self._m

    def add_edge(self, u: int, v: int) -> int:
        """Append an edge and return its id (= previous edge count)."""
        u = int(u)
        v = int(v)
        if not (0 <= u < self._n and 0 <= v < self._n):
            raise ValueError(f"edge endpoint out of range: ({u}, {v})")
        if u == v:
            raise ValueError(f"loop edge ({u}, {v}) not allowed")
        if self._m == len(self._eu):
            grown = max(2 * self._m, _INITIAL_CAPACITY)
            self._eu = np.resize(self._eu, grown)
            self._ev = np.resize(self._ev, grown)
        eid = self._m
        self._eu[eid] = u
        self._ev[eid] = v
        self._m += 1
        self._deg[u] += 1
        self._deg[v] += 1
        self._csr = None
        return eid

    def endpoints(self, eid: int) -> tuple[int, int]:
        if not (0 <= eid < self._m):
            raise IndexError(f"edge id {eid} out of range")
        return int(self._eu[eid]), int(self._ev[eid])

    @property
    def edges(self) -> list[tuple[int, int]]:
        """Edge list in insertion order (materialized copy)."""
        return list(zip(self._eu[: self._m].tolist(), self._ev[: self._m].tolist()))

    def degree(self, v: int) -> int:
        return int(self._deg[v])

    def max_degree(self) -> int:
        return int(self._deg.max()) if self._n else 0

    def degree_array(self) -> np.ndarray:
        return self._deg[: self._n].copy()

    def multiplicity(self, u: int, v: int) -> int:
        """Number of parallel edges joining u and v."""
        eu = self._eu[: self._m]
        ev = self._ev[: self._m]
        return int((((eu == u) & (ev == v)) | ((eu == v) & (ev == u))).sum())

    def endpoint_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Internal int64 endpoint arrays (views; do not mutate)."""
        return self._eu[: self._m], self._ev[: self._m]

    def csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Half-edge adjacency (indptr, adj_vertex, adj_edge), each vertex's
        half-edges ordered by edge id. Cached until the next add_edge."""
        if self._csr is None:
            eu = self._eu[: self._m]
            ev = self._ev[: self._m]
            ids = np.arange(self._m, dtype=np.int64)
            hsrc = np.concatenate([eu, ev])
            hdst = np.concatenate([ev, eu])
            hid = np.concatenate([ids, ids])
            order = np.lexsort((hid, hsrc))
            indptr = np.zeros(self._n + 1, dtype=np.int64)
            np.cumsum(np.bincount(hsrc, minlength=self._n), out=indptr[1:])
            self._csr = (indptr, hdst[order], hid[order])
        return self._csr

    def __repr__(self):
        return f"Multigraph(vertices={self._n}, edges={self._m})"


@dataclass(frozen=True)
class ComponentSummary:
    """One connected component: its vertex set, edge count (with
    multiplicity) and cyclomatic number edge_count - |vertices| + 1."""

    vertices: tuple[int, ...]
    edge_count: int
    cyclomatic: int

    @property
    def is_acyclic(self) -> bool:
        return self.cyclomatic == 0

    @property
    def is_unicyclic(self) -> bool:
        return self.cyclomatic == 1


def component_labels(g: Multigraph, active: np.ndarray | None = None) -> np.ndarray:
    """Component root label per vertex; `active` restricts to a subset of
    edges (uint8 mask)."""
    eu, ev = g.endpoint_arrays()
    return _core.uf_labels(g.vertex_count, eu, ev, active)


def _component_counts(g, labels, active=None):
    """Per-root (vertex_count, edge_count) arrays indexed by root id."""
    n = g.vertex_count
    eu, _ = g.endpoint_arrays()
    vcnt = np.bincount(labels, minlength=n) if n else np.zeros(0, dtype=np.int64)
    edge_roots = labels[eu] if g.edge_count else np.zeros(0, dtype=np.int64)
    if active is not None and g.edge_count:
        edge_roots = edge_roots[active.astype(bool)]
    ecnt = np.bincount(edge_roots, minlength=n) if n else np.zeros(0, dtype=np.int64)
    return vcnt, ecnt


def _summarize(g, labels, roots, vcnt, ecnt):
    """Build ComponentSummary objects for the given roots (host ordering:
    ascending minimum vertex id)."""
    want = set(int(r) for r in roots)
    members: dict[int, list[int]] = {r: [] for r in want}
    for v, r in enumerate(labels.tolist()):
        if r in want:
            members[r].append(v)
    out = []
    for r in sorted(want, key=lambda r: members[r][0]):
        out.append(
            ComponentSummary(
                vertices=tuple(members[r]),
                edge_count=int(ecnt[r]),
                cyclomatic=int(ecnt[r]) - int(vcnt[r]) + 1,
            )
        )
    return out


def components(g: Multigraph) -> list[ComponentSummary]:
    """All connected components, ordered by smallest contained vertex id.
    Isolated vertices appear as singleton components."""
    labels = component_labels(g)
    vcnt, ecnt = _component_counts(g, labels)
    roots = np.unique(labels) if g.vertex_count else np.zeros(0, dtype=np.int64)
    return _summarize(g, labels, roots, vcnt, ecnt)


def induced_subgraph(g: Multigraph, coloring, color: int) -> tuple[Multigraph, list[int]]:
    """Subgraph on the vertices of the given color plus all edges joining
    two such vertices. Returns (subgraph, mapping) where mapping[new_id]
    is the host vertex id."""
    cols = np.asarray(coloring, dtype=np.int64)
    if len(cols) != g.vertex_count:
        raise ValueError("coloring must assign every vertex")
    keep = cols == color
    mapping = np.nonzero(keep)[0]
    new_id = np.full(g.vertex_count, -1, dtype=np.int64)
    new_id[mapping] = np.arange(len(mapping))
    eu, ev = g.endpoint_arrays()
    if g.edge_count:
        emask = keep[eu] & keep[ev]
        sub = Multigraph.from_edges(len(mapping), (new_id[eu[emask]], new_id[ev[emask]]))
    else:
        sub = Multigraph(len(mapping))
    return sub, mapping.tolist()


def is_planar(g: Multigraph) -> bool:
    """Planarity of the underlying simple graph (parallel edges never
    change planarity)."""
    simple = set()
    eu, ev = g.endpoint_arrays()
    for u, v in zip(eu.tolist(), ev.tolist()):
        simple.add((u, v) if u < v else (v, u))
    n = g.vertex_count
    if n >= 3 and len(simple) > 3 * n - 6:
        return False
    h = nx.Graph()
    h.add_nodes_from(range(n))
    h.add_edges_from(simple)
    ok, _ = nx.check_planarity(h, counterexample=False)
    return bool(ok)
