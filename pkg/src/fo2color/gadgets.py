"""Verified logic gadgets over FO 2-colorings.

Each template is a small multigraph with ordered external ports and a
declared port semantics: the exact set of port color patterns that extend
to a complete FO 2-coloring. Declarations are never trusted; the solver
recomputes every table exhaustively (verify_template), which also pins the
adjacency transcription down to regression-locked vertex and edge counts.

Gadget kinds:

* not  -- tripled edge; ports get different colors (connection degree 3)
* eq   -- ports get equal colors (connection degree 2)
* ne   -- ports differ, at connection degree 2 (eq / tripled pair / eq)
* or   -- output port matches at least one input port
* var  -- one chain per polarity of a variable, bridged by an ne
* xo   -- planar crossover transporting two equalities (x=x', y=y')
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Multigraph
from .orientation import is_fo2coloring
from .solver import SolveLimits, extend, port_table

KINDS = ("not", "eq", "ne", "or", "var", "xo")

CONNECTION_DEGREE = {"not": 3, "eq": 2, "ne": 2, "or": 2, "var": 4, "xo": 4}


class GraphBuilder:
    """Mutable edge list for assembling gadgets and reductions; templates
    are spliced in by identifying their ports with existing vertices."""

    def __init__(self):
        self._n = 0
        self._edges: list[tuple[int, int]] = []

    def vertex(self) -> int:
        self._n += 1
        return self._n - 1

    def vertices(self, k: int) -> list[int]:
        return [self.vertex() for _ in range(k)]

    def edge(self, u: int, v: int) -> int:
        if u == v:
            raise ValueError("loop edge not allowed")
        if not (0 <= u < self._n and 0 <= v < self._n):
            raise ValueError("endpoint out of range")
        self._edges.append((u, v))
        return len(self._edges) - 1

    def double(self, u: int, v: int):
        self.edge(u, v)
        self.edge(u, v)

    def triple(self, u: int, v: int):
        self.edge(u, v)
        self.edge(u, v)
        self.edge(u, v)

    def instantiate(self, template: "GadgetTemplate", binding) -> list[int]:
        """Splice a template into this graph, identifying its ports with
        the given host vertices (one per port, in port order). Internal
        vertices are freshly allocated in template-id order. Returns the
        template-vertex -> host-vertex mapping."""
        binding = list(binding)
        if len(binding) != len(template.ports):
            raise ValueError("binding must cover all ports")
        mapping = [-1] * template.graph.vertex_count
        for p, host in zip(template.ports, binding):
            if not 0 <= host < self._n:
                raise ValueError("bound host vertex does not exist")
            mapping[p] = host
        for tv in range(template.graph.vertex_count):
            if mapping[tv] < 0:
                mapping[tv] = self.vertex()
        for u, v in template.graph.edges:
            self.edge(mapping[u], mapping[v])
        return mapping

    @property
    def vertex_count(self) -> int:
        return self._n

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def graph(self) -> Multigraph:
        return Multigraph.from_edges(self._n, list(self._edges))


@dataclass
class GadgetTemplate:
    """Immutable gadget description plus a lazy cache of canonical internal
    colorings, one per allowed port pattern."""

    kind: str
    params: tuple
    graph: Multigraph
    ports: tuple[int, ...]
    port_names: tuple[str, ...]
    allowed: frozenset
    anchor_positive: int | None = None  # var templates with an empty side
    anchor_negative: int | None = None
    _completions: dict = field(default_factory=dict, repr=False, compare=False)

    def connection_degree(self) -> int:
        return max((self.graph.degree(p) for p in self.ports), default=0)


_TEMPLATES: dict[tuple, GadgetTemplate] = {}


def build(kind: str, params=()) -> GadgetTemplate:
    """Construct (and memoize) a gadget template. For 'var', params is
    (n, m): the number of positive and negative ports."""
    kind = kind.lower()
    params = tuple(int(p) for p in params)
    if kind not in KINDS:
        raise ValueError(f"unknown gadget kind {kind!r}")
    if kind == "var":
        if len(params) != 2 or params[0] < 0 or params[1] < 0:
            raise ValueError("var takes params (n, m) with n, m >= 0")
    elif params:
        raise ValueError(f"gadget {kind!r} takes no params")
    key = (kind, params)
    if key not in _TEMPLATES:
        _TEMPLATES[key] = _BUILDERS[kind](params)
    return _TEMPLATES[key]


def _build_not(params):
    b = GraphBuilder()
    x, y = b.vertices(2)
    b.triple(x, y)
    return GadgetTemplate(
        kind="not",
        params=params,
        graph=b.graph(),
        ports=(x, y),
        port_names=("x", "y"),
        allowed=frozenset({(0, 1), (1, 0)}),
    )


def _eq_into(b: GraphBuilder, x: int, y: int):
    """Wire the equality gadget between two existing vertices.

    Both ports hang off a shared hub by doubled edges; the hub sits on a
    triangle whose other two corners each carry a doubled pair into a
    tripled (not) pair. Any coloring giving the ports different colors
    traps one triangle corner in a component with two cycles.
    """
    hub = b.vertex()
    apex_l, la, lb = b.vertices(3)
    apex_r, rc, rd = b.vertices(3)
    b.double(x, hub)
    b.double(hub, y)
    b.edge(hub, apex_l)
    b.edge(apex_l, apex_r)
    b.edge(apex_r, hub)
    b.double(apex_l, la)
    b.double(apex_l, lb)
    b.triple(la, lb)
    b.double(apex_r, rc)
    b.double(apex_r, rd)
    b.triple(rc, rd)
    return hub


def _build_eq(params):
    b = GraphBuilder()
    x, y = b.vertices(2)
    hub = _eq_into(b, x, y)
    return GadgetTemplate(
        kind="eq",
        params=params,
        graph=b.graph(),
        ports=(x, y),
        port_names=("x", "y"),
        allowed=frozenset({(0, 0), (1, 1)}),
    )


EQ_HUB = 2  # template vertex id of the eq gadget's hub (used by its tests)


def _build_ne(params):
    b = GraphBuilder()
    x, y = b.vertices(2)
    p, q = b.vertices(2)
    eq = build("eq")
    b.instantiate(eq, (x, p))
    b.triple(p, q)
    b.instantiate(eq, (q, y))
    return GadgetTemplate(
        kind="ne",
        params=params,
        graph=b.graph(),
        ports=(x, y),
        port_names=("x", "y"),
        allowed=frozenset({(0, 1), (1, 0)}),
    )


def _build_or(params):
    # Pentagon of doubled edges; one corner per external connection, spliced
    # through eq gadgets so port orientations never interact with the core.
    # Vertices are created in constraint order (each new one immediately
    # wired to existing ones) to keep the solver's id-order search local.
    b = GraphBuilder()
    x, y, z = b.vertices(3)
    eq = build("eq")
    at_y = b.vertex()
    b.instantiate(eq, (at_y, y))
    at_x = b.vertex()
    b.instantiate(eq, (at_x, x))
    b.double(at_y, at_x)
    bot = b.vertex()
    b.double(at_x, bot)
    at_z = b.vertex()
    b.double(bot, at_z)
    b.instantiate(eq, (at_z, z))
    top = b.vertex()
    b.double(at_z, top)
    b.double(top, at_y)
    allowed = frozenset(
        (a, bb, c)
        for a in (0, 1)
        for bb in (0, 1)
        for c in (0, 1)
        if not (a == bb and c != a)
    )
    return GadgetTemplate(
        kind="or",
        params=params,
        graph=b.graph(),
        ports=(x, y, z),
        port_names=("x", "y", "z"),
        allowed=allowed,
    )


def _build_var(params):
    n, m = params
    b = GraphBuilder()
    pos_ports = b.vertices(n)
    neg_ports = b.vertices(m)
    anchor_pos = anchor_neg = None
    pos_nodes = list(pos_ports)
    neg_nodes = list(neg_ports)
    if not pos_nodes:  # keep the ne bridge even for single-polarity variables
        anchor_pos = b.vertex()
        pos_nodes = [anchor_pos]
    if not neg_nodes:
        anchor_neg = b.vertex()
        neg_nodes = [anchor_neg]
    eq = build("eq")
    ne = build("ne")
    for a, bb in zip(pos_nodes, pos_nodes[1:]):
        b.instantiate(eq, (a, bb))
    for a, bb in zip(neg_nodes, neg_nodes[1:]):
        b.instantiate(eq, (a, bb))
    b.instantiate(ne, (pos_nodes[-1], neg_nodes[-1]))
    allowed = frozenset({(0,) * n + (1,) * m, (1,) * n + (0,) * m})
    names = tuple(f"x{i + 1}" for i in range(n)) + tuple(f"nx{j + 1}" for j in range(m))
    return GadgetTemplate(
        kind="var",
        params=params,
        graph=b.graph(),
        ports=tuple(pos_ports) + tuple(neg_ports),
        port_names=names,
        allowed=allowed,
        anchor_positive=anchor_pos,
        anchor_negative=anchor_neg,
    )


def _build_xo(params):
    # Crossover core: an inner square of eq gadgets inside an octagon; two
    # ne spokes and two eq bridges tie opposite octagon corners to the
    # square, and each port attaches twice (one eq leg, one doubled edge)
    # so the two transported equalities cannot mix. As with the or gadget,
    # vertices appear in constraint order so wrong guesses die young.
    b = GraphBuilder()
    x, xp, y, yp = b.vertices(4)
    eq = build("eq")
    ne = build("ne")
    o7 = b.vertex()
    b.instantiate(eq, (o7, x))
    b.double(o7, y)
    c15 = b.vertex()
    b.instantiate(eq, (c15, y))
    o6 = b.vertex()
    b.instantiate(eq, (o6, c15))
    b.edge(o6, o7)
    o5 = b.vertex()
    b.edge(o5, o6)
    b.double(o5, c15)
    o8 = b.vertex()
    b.edge(o7, o8)
    b.double(o8, x)
    s1 = b.vertex()
    b.instantiate(ne, (s1, o6))
    s2 = b.vertex()
    b.instantiate(eq, (s1, s2))
    m14 = b.vertex()
    b.instantiate(eq, (s2, m14))
    b.instantiate(eq, (m14, o8))
    o9 = b.vertex()
    b.edge(o8, o9)
    b.double(m14, o9)
    s3 = b.vertex()
    b.instantiate(eq, (s2, s3))
    o10 = b.vertex()
    b.instantiate(ne, (s3, o10))
    b.edge(o9, o10)
    c17 = b.vertex()
    b.instantiate(eq, (o10, c17))
    b.instantiate(eq, (c17, yp))
    b.double(o9, c17)
    o11 = b.vertex()
    b.edge(o10, o11)
    b.double(o11, yp)
    b.instantiate(eq, (o11, xp))
    s4 = b.vertex()
    b.instantiate(eq, (s3, s4))
    b.instantiate(eq, (s4, s1))
    m13 = b.vertex()
    b.instantiate(eq, (s4, m13))
    b.double(m13, o5)
    o12 = b.vertex()
    b.instantiate(eq, (m13, o12))
    b.edge(o11, o12)
    b.edge(o12, o5)
    b.double(o12, xp)
    allowed = frozenset((a, a, bb, bb) for a in (0, 1) for bb in (0, 1))
    return GadgetTemplate(
        kind="xo",
        params=params,
        graph=b.graph(),
        ports=(x, xp, y, yp),
        port_names=("x", "xp", "y", "yp"),
        allowed=allowed,
    )


_BUILDERS = {
    "not": _build_not,
    "eq": _build_eq,
    "ne": _build_ne,
    "or": _build_or,
    "var": _build_var,
    "xo": _build_xo,
}


@dataclass(frozen=True)
class TemplateReport:
    kind: str
    params: tuple
    n_ports: int
    ok: bool
    computed: frozenset
    expected: frozenset
    missing: tuple  # declared allowed but solver says no
    spurious: tuple  # solver says yes but not declared
    hub_inversion: bool | None = None

    def __str__(self):
        lines = [
            f"gadget {self.kind}{self.params or ''}: {'pass' if self.ok else 'FAIL'}",
            f"  allowed patterns: {len(self.computed)} / {2 ** self.n_ports}",
        ]
        if self.missing:
            lines.append(f"  missing: {sorted(self.missing)}")
        if self.spurious:
            lines.append(f"  spurious: {sorted(self.spurious)}")
        if self.hub_inversion is not None:
            lines.append(f"  hub inversion: {'holds' if self.hub_inversion else 'VIOLATED'}")
        return "\n".join(lines)


def verify_template(t: GadgetTemplate, limits: SolveLimits | None = None) -> TemplateReport:
    """Recompute the port table with the solver and compare against the
    declared semantics. For the eq gadget, additionally check by full
    enumeration that the hub takes the opposite color of the ports in
    every complete coloring."""
    table = port_table(t.graph, t.ports, limits)
    computed = table.patterns
    missing = tuple(sorted(t.allowed - computed))
    spurious = tuple(sorted(computed - t.allowed))
    hub_inv = None
    if t.kind == "eq":
        hub_inv = _check_hub_inversion(t)
    ok = not missing and not spurious and hub_inv is not False
    return TemplateReport(
        kind=t.kind,
        params=t.params,
        n_ports=len(t.ports),
        ok=ok,
        computed=computed,
        expected=t.allowed,
        missing=missing,
        spurious=spurious,
        hub_inversion=hub_inv,
    )


def _check_hub_inversion(t):
    g = t.graph
    n = g.vertex_count
    x, y = t.ports
    for bits in range(1 << n):
        coloring = [(bits >> v) & 1 for v in range(n)]
        if coloring[x] != coloring[y]:
            continue
        if not is_fo2coloring(g, coloring):
            continue
        if coloring[EQ_HUB] != 1 - coloring[x]:
            return False
    return True


def canonical_internal_coloring(t: GadgetTemplate, pattern) -> list[int]:
    """Lexicographically smallest complete coloring restricting to the
    given allowed port pattern (computed once via the solver, cached).

    Populate the cache from one thread before sharing a template; reads of
    a populated cache are safe concurrently."""
    pattern = tuple(int(b) for b in pattern)
    if pattern not in t.allowed:
        raise ValueError(f"pattern {pattern} not allowed for gadget {t.kind}")
    cached = t._completions.get(pattern)
    if cached is None:
        res = extend(t.graph, dict(zip(t.ports, pattern)))
        if not res.is_yes:
            raise RuntimeError(f"allowed pattern {pattern} has no completion; template broken")
        cached = res.coloring
        t._completions[pattern] = cached
    return list(cached)
