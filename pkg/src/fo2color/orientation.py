"""Functional orientations and FO 2-coloring verification.

A functional orientation gives every non-isolated vertex exactly one edge
directed away from it; an edge may carry both directions or stay
undirected. A full functional orientation leaves no edge undirected and
exists exactly for graphs whose components are acyclic or unicyclic, which
is what the cyclomatic numbers certify.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from . import _core
from .graph import ComponentSummary, Multigraph, _component_counts, _summarize, component_labels


class Mark(IntEnum):
    UNDIRECTED = 0
    FORWARD = 1  # from the declared endpoint u toward v
    REVERSE = 2
    BOTH = 3


class FunctionalOrientation:
    """Per-edge direction marks, indexed by edge id."""

    __slots__ = ("_marks",)

    def __init__(self, marks):
        arr = np.asarray(marks, dtype=np.uint8)
        if len(arr) and arr.max() > 3:
            raise ValueError("invalid direction mark")
        self._marks = arr

    @property
    def marks(self) -> np.ndarray:
        return self._marks

    def __len__(self):
        return len(self._marks)

    def __getitem__(self, eid: int) -> Mark:
        return Mark(int(self._marks[eid]))

    def __eq__(self, other):
        return isinstance(other, FunctionalOrientation) and np.array_equal(
            self._marks, other._marks
        )

    def __repr__(self):
        return f"FunctionalOrientation({self._marks.tolist()})"


@dataclass(frozen=True)
class InfeasibilityCertificate:
    """A connected component with two or more independent cycles; no full
    functional orientation can exist on it."""

    component: ComponentSummary


def _component_data(g, active):
    labels = component_labels(g, active)
    vcnt, ecnt = _component_counts(g, labels, active)
    return labels, vcnt, ecnt


def _offending_roots(vcnt, ecnt):
    """Roots whose component has cyclomatic number >= 2."""
    present = vcnt > 0
    return np.nonzero(present & (ecnt - vcnt + 1 >= 2))[0]


def _active_csr(g, active):
    if active is None:
        return g.csr()
    keep = active.astype(bool)
    eu, ev = g.endpoint_arrays()
    ids = np.arange(g.edge_count, dtype=np.int64)
    hsrc = np.concatenate([eu[keep], ev[keep]])
    hdst = np.concatenate([ev[keep], eu[keep]])
    hid = np.concatenate([ids[keep], ids[keep]])
    order = np.lexsort((hid, hsrc))
    indptr = np.zeros(g.vertex_count + 1, dtype=np.int64)
    if len(hsrc):
        np.cumsum(np.bincount(hsrc, minlength=g.vertex_count), out=indptr[1:])
    return indptr, hdst[order], hid[order]


def _orient_feasible(g, active, labels, vcnt, ecnt):
    """Build marks once every active component is known to have cyclomatic
    number <= 1."""
    n = g.vertex_count
    eu, ev = g.endpoint_arrays()
    if g.edge_count:
        ids = np.arange(g.edge_count, dtype=np.int64)
        if active is not None:
            keep = active.astype(bool)
            edge_roots = labels[eu[keep]]
            ids_kept = ids[keep]
        else:
            edge_roots = labels[eu]
            ids_kept = ids
        min_edge = np.full(n, g.edge_count, dtype=np.int64)
        np.minimum.at(min_edge, edge_roots, ids_kept)
    else:
        min_edge = np.full(n, 0, dtype=np.int64)
    tree_roots = (vcnt > 0) & (ecnt >= 1) & (ecnt - vcnt + 1 == 0)
    anchors = min_edge[tree_roots]
    indptr, adj_v, adj_e = _active_csr(g, active)
    marks = _core.orient_marks(n, indptr, adj_v, adj_e, eu, ev, anchors, g.edge_count)
    return FunctionalOrientation(marks)


def build_full_orientation(g: Multigraph):
    """Full functional orientation of g, or an InfeasibilityCertificate
    naming the first component (by smallest vertex id) with cyclomatic
    number >= 2.

    Unicyclic components orient their unique cycle consistently with all
    other vertices pointing along the path toward the cycle; acyclic
    components mark their minimum edge id BOTH as the anchor.
    """
    labels, vcnt, ecnt = _component_data(g, None)
    bad = _offending_roots(vcnt, ecnt)
    if len(bad):
        summaries = _summarize(g, labels, bad, vcnt, ecnt)
        return InfeasibilityCertificate(summaries[0])
    return _orient_feasible(g, None, labels, vcnt, ecnt)


def check_orientation(g: Multigraph, o: FunctionalOrientation, require_full: bool) -> bool:
    """Definition-level check: every non-isolated vertex has exactly one
    edge directed away from it (and no undirected edge when require_full)."""
    marks = o.marks if isinstance(o, FunctionalOrientation) else np.asarray(o, dtype=np.uint8)
    if len(marks) != g.edge_count:
        raise ValueError("orientation length does not match edge count")
    if require_full and g.edge_count and (marks == Mark.UNDIRECTED).any():
        return False
    eu, ev = g.endpoint_arrays()
    n = g.vertex_count
    out = np.zeros(n, dtype=np.int64)
    if g.edge_count:
        out_u = (marks == Mark.FORWARD) | (marks == Mark.BOTH)
        out_v = (marks == Mark.REVERSE) | (marks == Mark.BOTH)
        np.add.at(out, eu[out_u], 1)
        np.add.at(out, ev[out_v], 1)
    non_isolated = g.degree_array() > 0
    return bool((out[non_isolated] == 1).all())


def verify_fo2coloring(g: Multigraph, coloring) -> list[ComponentSummary]:
    """Offending induced monochromatic components (cyclomatic >= 2), ordered
    by smallest vertex id. An empty list means the coloring is a valid
    FO 2-coloring."""
    cols = _check_coloring(g, coloring)
    active = _monochromatic_mask(g, cols)
    labels, vcnt, ecnt = _component_data(g, active)
    bad = _offending_roots(vcnt, ecnt)
    if not len(bad):
        return []
    return _summarize(g, labels, bad, vcnt, ecnt)


def is_fo2coloring(g: Multigraph, coloring) -> bool:
    return not verify_fo2coloring(g, coloring)


def orient_for_coloring(g: Multigraph, coloring) -> FunctionalOrientation:
    """Full functional orientation of every induced monochromatic subgraph,
    lifted to host edge ids; bichromatic edges stay UNDIRECTED. Raises
    ValueError when the coloring fails verify_fo2coloring."""
    cols = _check_coloring(g, coloring)
    active = _monochromatic_mask(g, cols)
    labels, vcnt, ecnt = _component_data(g, active)
    bad = _offending_roots(vcnt, ecnt)
    if len(bad):
        raise ValueError(
            f"coloring is not an FO 2-coloring: {len(bad)} induced component(s) "
            "with cyclomatic number >= 2"
        )
    return _orient_feasible(g, active, labels, vcnt, ecnt)


def _check_coloring(g, coloring):
    cols = np.asarray(coloring, dtype=np.int64)
    if len(cols) != g.vertex_count:
        raise ValueError("coloring must assign every vertex")
    if len(cols) and (cols.min() < 0 or cols.max() > 1):
        raise ValueError("colors must be 0 or 1")
    return cols


def _monochromatic_mask(g, cols):
    if not g.edge_count:
        return np.zeros(0, dtype=np.uint8)
    eu, ev = g.endpoint_arrays()
    return (cols[eu] == cols[ev]).astype(np.uint8)
