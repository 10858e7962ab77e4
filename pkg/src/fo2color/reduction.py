"""Certifying compiler from 3-CNF to FO 2-coloring instances.

compile_formula builds a graph that is FO 2-colorable exactly when the
formula is satisfiable: one var gadget per variable (one port per literal
occurrence), two or gadgets per clause joined into a three-input or, eq
wires from literal ports to clause inputs, and the clause outputs chained
together by eq gadgets. Every graph it emits has maximum degree <= 6.

planarize removes the only crossings such instances have, those between
var-to-clause wires in the canonical two-row layout, by cutting each
crossed wire into eq segments threaded through a crossover gadget per
crossing. The result is planar and keeps the same satisfying assignments.

Witness maps translate in both directions: a satisfying assignment becomes
a valid coloring (ports by polarity, internals from the cached canonical
gadget colorings) and any valid coloring reads back as a satisfying
assignment.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

from .gadgets import GraphBuilder, build, canonical_internal_coloring
from .graph import Multigraph
from .orientation import verify_fo2coloring


@dataclass(frozen=True)
class CnfFormula:
    """3-CNF over 1-based DIMACS literals; every clause has exactly three,
    duplicates permitted."""

    num_vars: int
    clauses: tuple

    def __post_init__(self):
        if self.num_vars < 1:
            raise ValueError("formula needs at least one variable")
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        for c in self.clauses:
            if len(c) != 3:
                raise ValueError(f"clause {c} must have exactly 3 literals")
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} out of range")

    def satisfies(self, assignment) -> bool:
        """Evaluate under assignment[i] = truth of variable i+1."""
        if len(assignment) != self.num_vars:
            raise ValueError("assignment must cover every variable")
        for c in self.clauses:
            if not any(assignment[abs(lit) - 1] == (lit > 0) for lit in c):
                return False
        return True


@dataclass(frozen=True)
class VariablePorts:
    positive: int  # representative host vertex of the unnegated side
    negative: int


@dataclass(frozen=True)
class ClausePorts:
    inputs: tuple[int, int, int]
    output: int


@dataclass(frozen=True)
class GadgetInstance:
    kind: str
    params: tuple
    role: str
    mapping: tuple  # template vertex id -> host vertex id


@dataclass(frozen=True)
class WitnessMap:
    variables: tuple
    clauses: tuple
    root_output: int
    registry: tuple


@dataclass(frozen=True)
class Slot:
    x: int
    vertex: int  # host port vertex carried by this slot


@dataclass(frozen=True)
class TwoRowLayout:
    """Canonical drawing: variable ports on the bottom row (by variable
    index, positive occurrences first), clause input slots on the top row
    (by clause index, then literal position). Two straight wires cross
    exactly when their endpoint orders interleave."""

    bottom: tuple
    top: tuple
    wires: tuple  # (bottom slot index, top slot index) per var-to-clause wire


@dataclass(frozen=True)
class ReductionStats:
    vertex_count: int
    edge_count: int
    max_degree: int
    gadget_counts: dict = field(compare=False)
    crossings: int = 0
    xo_count: int = 0


@dataclass(frozen=True)
class ReductionOutput:
    formula: CnfFormula
    graph: Multigraph
    witness: WitnessMap
    layout: TwoRowLayout
    planarized: bool
    stats: ReductionStats


def _occurrences(f: CnfFormula):
    """Per variable: ordered (clause, position) lists for each polarity."""
    pos = [[] for _ in range(f.num_vars)]
    neg = [[] for _ in range(f.num_vars)]
    for ci, clause in enumerate(f.clauses):
        for j, lit in enumerate(clause):
            (pos if lit > 0 else neg)[abs(lit) - 1].append((ci, j))
    return pos, neg


def wire_crossings(layout: TwoRowLayout) -> list[tuple[int, int]]:
    """Crossing wire pairs (i < j): endpoint orders interleave."""
    out = []
    wires = layout.wires
    for i in range(len(wires)):
        bi = layout.bottom[wires[i][0]].x
        ti = layout.top[wires[i][1]].x
        for j in range(i + 1, len(wires)):
            bj = layout.bottom[wires[j][0]].x
            tj = layout.top[wires[j][1]].x
            if (bi - bj) * (ti - tj) < 0:
                out.append((i, j))
    return out


def _crossing_order(layout, crossings):
    """For each wire, its crossings ordered along the segment (bottom to
    top), by exact intersection parameter.

    Coincident crossings (three or more wires through one point) are
    degenerate; a pure multiplicative spread of the bottom row cannot
    break them when the wire family is affine, so each bottom slot also
    gets an exponential jitter r**(i+1), dominated by the scale so the slot
    order (and hence the crossing set) is untouched. The jitter base grows
    until every wire's parameters are pairwise distinct; exact rational
    arithmetic makes the check airtight."""
    nb = len(layout.bottom)
    for r in range(2, 66):
        scale = r ** (nb + 2)
        spread = [s.x * scale + r ** (i + 1) for i, s in enumerate(layout.bottom)]
        params = {}
        for (i, j) in crossings:
            bi = spread[layout.wires[i][0]]
            ti = layout.top[layout.wires[i][1]].x
            bj = spread[layout.wires[j][0]]
            tj = layout.top[layout.wires[j][1]].x
            params[(i, j)] = Fraction(bi - bj, (bi - bj) - (ti - tj))
        per_wire = {}
        for (i, j), t in params.items():
            per_wire.setdefault(i, []).append((t, (i, j)))
            per_wire.setdefault(j, []).append((t, (i, j)))
        if all(len({t for t, _ in lst}) == len(lst) for lst in per_wire.values()):
            return {w: [c for _, c in sorted(lst)] for w, lst in per_wire.items()}
    raise AssertionError("could not separate coincident crossings")


class _Compiler:
    """Builds the reduction graph. Vertex ids are allocated along the
    constraint flow (variables, then each wire bottom-to-top with its
    crossovers, then the clause gadgets, then the output chain) so that the
    solver's id-order search refutes wrong guesses while they are still
    shallow."""

    def __init__(self, formula: CnfFormula):
        self.f = formula
        self.b = GraphBuilder()
        self.registry = []
        self.counts = {}

    def inst(self, kind, params, role, binding):
        t = build(kind, params)
        mapping = self.b.instantiate(t, binding)
        self.registry.append(GadgetInstance(kind, tuple(params), role, tuple(mapping)))
        self.counts[role] = self.counts.get(role, 0) + 1
        if kind != role:
            self.counts[kind] = self.counts.get(kind, 0) + 1
        return mapping

    def run(self, order=None, planarized=False):
        f = self.f
        b = self.b
        pos_occ, neg_occ = _occurrences(f)
        order = order or {}

        variables = []
        bottom = []
        port_of_occurrence = {}  # (clause, position) -> var port host vertex
        for vi in range(f.num_vars):
            n = len(pos_occ[vi])
            m = len(neg_occ[vi])
            pos_hosts = b.vertices(n)
            neg_hosts = b.vertices(m)
            t = build("var", (n, m))
            mapping = self.inst("var", (n, m), "var", pos_hosts + neg_hosts)
            pos_rep = pos_hosts[0] if n else mapping[t.anchor_positive]
            neg_rep = neg_hosts[0] if m else mapping[t.anchor_negative]
            variables.append(VariablePorts(pos_rep, neg_rep))
            for h, occ in zip(pos_hosts, pos_occ[vi]):
                port_of_occurrence[occ] = h
                bottom.append(Slot(len(bottom), h))
            for h, occ in zip(neg_hosts, neg_occ[vi]):
                port_of_occurrence[occ] = h
                bottom.append(Slot(len(bottom), h))
        bottom_index = {s.vertex: i for i, s in enumerate(bottom)}

        # Wires, each cut into eq segments threaded through its crossovers
        # in geometric order; the top endpoint becomes a clause input port.
        xo_ports = {}
        inputs = [[None] * 3 for _ in f.clauses]
        wires = []
        top = []
        n_xo = 0
        for ci in range(len(f.clauses)):
            for j in range(3):
                w = 3 * ci + j
                cur = port_of_occurrence[(ci, j)]
                segments = 1
                for key in order.get(w, ()):
                    if key not in xo_ports:
                        ports = tuple(b.vertices(4))
                        xo_ports[key] = ports
                        self.inst("eq", (), "eq_segment", (cur, ports[0] if key[0] == w else ports[2]))
                        self.inst("xo", (), "xo", ports)
                        n_xo += 1
                    else:
                        ports = xo_ports[key]
                        self.inst("eq", (), "eq_segment", (cur, ports[0] if key[0] == w else ports[2]))
                    cur = ports[1] if key[0] == w else ports[3]
                    segments += 1
                top_v = b.vertex()
                role = "eq_wire" if segments == 1 else "eq_segment"
                self.inst("eq", (), role, (cur, top_v))
                inputs[ci][j] = top_v
                wires.append((bottom_index[port_of_occurrence[(ci, j)]], w))
                top.append(Slot(len(top), top_v))

        # Clause gadgets: two or gadgets joined by an eq into a 3-input or.
        clauses = []
        for ci in range(len(f.clauses)):
            in1, in2, in3 = inputs[ci]
            mid1, mid2, out_v = b.vertices(3)
            self.inst("or", (), "or", (in1, in2, mid1))
            self.inst("eq", (), "eq_or_join", (mid1, mid2))
            self.inst("or", (), "or", (mid2, in3, out_v))
            clauses.append(ClausePorts((in1, in2, in3), out_v))

        for ci in range(1, len(f.clauses)):
            self.inst("eq", (), "eq_chain", (clauses[ci - 1].output, clauses[ci].output))

        graph = b.graph()
        witness = WitnessMap(
            variables=tuple(variables),
            clauses=tuple(clauses),
            root_output=clauses[0].output,
            registry=tuple(self.registry),
        )
        layout = TwoRowLayout(bottom=tuple(bottom), top=tuple(top), wires=tuple(wires))
        n_cross = sum(len(v) for v in order.values()) // 2
        stats = ReductionStats(
            vertex_count=graph.vertex_count,
            edge_count=graph.edge_count,
            max_degree=graph.max_degree(),
            gadget_counts=dict(sorted(self.counts.items())),
            crossings=n_cross,
            xo_count=n_xo,
        )
        return ReductionOutput(
            formula=f,
            graph=graph,
            witness=witness,
            layout=layout,
            planarized=planarized,
            stats=stats,
        )


def compile_formula(f: CnfFormula) -> ReductionOutput:
    """Compile a 3-CNF formula into a degree-<= 6 multigraph that is
    FO 2-colorable iff the formula is satisfiable."""
    if not f.clauses:
        raise ValueError("formula has no clauses")
    return _Compiler(f).run()


def planarize(out: ReductionOutput) -> ReductionOutput:
    """Replace every wire crossing of the two-row layout with a crossover
    gadget, producing a planar graph with the same satisfying assignments.
    Already-planarized outputs are returned unchanged."""
    if out.planarized:
        return out
    crossings = wire_crossings(out.layout)
    if not crossings:
        return replace(out, planarized=True)
    order = _crossing_order(out.layout, crossings)
    return _Compiler(out.formula).run(order=order, planarized=True)


def assignment_to_coloring(out: ReductionOutput, assignment) -> list[int]:
    """Coloring realizing a satisfying assignment: true literals color 0,
    gadget internals from the cached canonical completions. The result
    passes verify_fo2coloring."""
    f = out.formula
    assignment = [bool(a) for a in assignment]
    if not f.satisfies(assignment):
        raise ValueError("assignment does not satisfy the formula")

    colors: dict[int, int] = {}
    pos_occ, neg_occ = _occurrences(f)
    lit_color = {}
    var_instances = [i for i in out.witness.registry if i.role == "var"]
    for vi, var_ports in enumerate(out.witness.variables):
        side = 0 if assignment[vi] else 1
        inst = var_instances[vi]
        t = build("var", inst.params)
        n, m = inst.params
        if n or m:
            # Anchor representatives on a padded side are forced through the
            # ne bridge, so presetting them agrees with the completion. A
            # variable with no occurrences at all is left to the canonical
            # completion instead (its value never affects satisfaction).
            colors[var_ports.positive] = side
            colors[var_ports.negative] = 1 - side
        for k, p in enumerate(t.ports):
            colors[inst.mapping[p]] = side if k < n else 1 - side
        for occ in pos_occ[vi]:
            lit_color[occ] = side
        for occ in neg_occ[vi]:
            lit_color[occ] = 1 - side

    or_joins = [i for i in out.witness.registry if i.role == "eq_or_join"]
    for ci, ports in enumerate(out.witness.clauses):
        l1, l2, l3 = (lit_color[(ci, j)] for j in range(3))
        for j, c in enumerate((l1, l2, l3)):
            colors[ports.inputs[j]] = c
        mid = 0 if (l1 == 0 or l2 == 0) else 1
        if mid != 0 and l3 != 0:
            raise AssertionError("satisfying assignment left a clause without a true literal")
        t = build("eq")
        for h in (or_joins[ci].mapping[p] for p in t.ports):
            colors[h] = mid
        colors[ports.output] = 0

    # Crossover pass-through ports sit between eq segments of their wires;
    # propagate the wire colors along each chain until stable.
    changed = True
    while changed:
        changed = False
        for inst in out.witness.registry:
            if inst.role == "eq_segment":
                t = build("eq")
                a, bb = (inst.mapping[p] for p in t.ports)
                if a in colors and bb not in colors:
                    colors[bb] = colors[a]
                    changed = True
                elif bb in colors and a not in colors:
                    colors[a] = colors[bb]
                    changed = True
            elif inst.role == "xo":
                t = build("xo")
                px, pxp, py, pyp = (inst.mapping[p] for p in t.ports)
                for a, bb in ((px, pxp), (py, pyp)):
                    if a in colors and bb not in colors:
                        colors[bb] = colors[a]
                        changed = True
                    elif bb in colors and a not in colors:
                        colors[a] = colors[bb]
                        changed = True

    full = [-1] * out.graph.vertex_count
    for inst in out.witness.registry:
        t = build(inst.kind, inst.params)
        pattern = tuple(colors[inst.mapping[p]] for p in t.ports)
        completion = canonical_internal_coloring(t, pattern)
        for tv, host in enumerate(inst.mapping):
            c = completion[tv]
            if full[host] == -1:
                full[host] = c
            elif full[host] != c and tv not in t.ports:
                raise AssertionError("conflicting internal colors between gadgets")
    for v, c in colors.items():
        full[v] = c
    if any(c == -1 for c in full):
        raise AssertionError("uncolored vertex after gadget filling")
    offenders = verify_fo2coloring(out.graph, full)
    if offenders:
        raise AssertionError(f"constructed coloring is invalid: {len(offenders)} bad components")
    return full


def coloring_to_assignment(out: ReductionOutput, coloring) -> list[bool]:
    """Read the satisfying assignment off a valid coloring: true is the
    color of the designated root output, a variable is true iff its
    positive representative port carries that color."""
    offenders = verify_fo2coloring(out.graph, coloring)
    if offenders:
        raise ValueError("coloring is not a valid FO 2-coloring of the compiled graph")
    true_color = coloring[out.witness.root_output]
    assignment = [coloring[vp.positive] == true_color for vp in out.witness.variables]
    if not out.formula.satisfies(assignment):
        raise RuntimeError("valid coloring decoded to a non-satisfying assignment")
    return assignment


@dataclass(frozen=True)
class AuditReport:
    vertex_count: int
    edge_count: int
    max_degree: int
    degree_ok: bool
    planar: bool | None  # checked only for planarized outputs
    gadget_counts: dict = field(compare=False)
    crossings: int = 0
    xo_count: int = 0

    @property
    def ok(self) -> bool:
        return self.degree_ok and self.planar is not False

    def lines(self):
        out = [
            f"vertices {self.vertex_count}",
            f"edges {self.edge_count}",
            f"max_degree {self.max_degree} ({'ok' if self.degree_ok else 'VIOLATION: > 6'})",
        ]
        if self.planar is not None:
            out.append(f"planar {'true' if self.planar else 'FALSE'}")
        out.append(f"crossings {self.crossings}")
        for k, v in sorted(self.gadget_counts.items()):
            out.append(f"gadget_count {k} {v}")
        return out


def audit(out: ReductionOutput) -> AuditReport:
    """Degree and planarity audit. Max degree must be <= 6 for every
    compiled graph; planarity is asserted only for planarized outputs."""
    from .graph import is_planar

    md = out.graph.max_degree()
    return AuditReport(
        vertex_count=out.graph.vertex_count,
        edge_count=out.graph.edge_count,
        max_degree=md,
        degree_ok=md <= 6,
        planar=is_planar(out.graph) if out.planarized else None,
        gadget_counts=dict(out.stats.gadget_counts),
        crossings=out.stats.crossings,
        xo_count=out.stats.xo_count,
    )
