"""Text formats: graphs, colorings, orientations, DIMACS CNF, witness maps
and DOT export. Every format round-trips byte for byte.

graph       "graph <n>" header, then one "e <u> <v>" line per edge in id
            order. '#' comments and blank lines are ignored on input.
coloring    one "c <vertex> <0|1>" line per vertex; other lines ignored,
            so a coloring can be read out of combined output.
orientation one "o <edge-id> <fwd|rev|both|none>" line per edge.
witness     key-value document carrying the formula, ports, registry,
            layout and stats of a reduction output.
"""

from __future__ import annotations

from .graph import Multigraph
from .orientation import FunctionalOrientation, Mark
from .reduction import (
    ClausePorts,
    CnfFormula,
    GadgetInstance,
    ReductionOutput,
    ReductionStats,
    Slot,
    TwoRowLayout,
    VariablePorts,
    WitnessMap,
)


class FormatError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


_MARK_NAMES = {
    Mark.FORWARD: "fwd",
    Mark.REVERSE: "rev",
    Mark.BOTH: "both",
    Mark.UNDIRECTED: "none",
}
_MARK_VALUES = {v: k for k, v in _MARK_NAMES.items()}


def emit_graph(g: Multigraph, comments=()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"graph {g.vertex_count}")
    lines.extend(f"e {u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Multigraph:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "graph":
            if n is not None:
                raise FormatError("duplicate graph header", lineno)
            if len(parts) != 2:
                raise FormatError("graph header needs a vertex count", lineno)
            try:
                n = int(parts[1])
            except ValueError:
                raise FormatError(f"bad vertex count {parts[1]!r}", lineno) from None
            if n < 0:
                raise FormatError("vertex count must be non-negative", lineno)
        elif parts[0] == "e":
            if n is None:
                raise FormatError("edge before graph header", lineno)
            if len(parts) != 3:
                raise FormatError("edge line needs two endpoints", lineno)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise FormatError("edge endpoints must be integers", lineno) from None
            if not (0 <= u < n and 0 <= v < n):
                raise FormatError(f"edge endpoint out of range: ({u}, {v})", lineno)
            if u == v:
                raise FormatError(f"loop edge ({u}, {v}) not allowed", lineno)
            edges.append((u, v))
        else:
            raise FormatError(f"unknown directive {parts[0]!r}", lineno)
    if n is None:
        raise FormatError("missing graph header")
    return Multigraph.from_edges(n, edges)


def emit_coloring(colors) -> str:
    return "".join(f"c {v} {int(c)}\n" for v, c in enumerate(colors))


def parse_coloring(text: str, vertex_count: int) -> list[int]:
    got = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0] != "c":
            continue
        if len(parts) != 3:
            raise FormatError("coloring line needs vertex and color", lineno)
        try:
            v, c = int(parts[1]), int(parts[2])
        except ValueError:
            raise FormatError("coloring entries must be integers", lineno) from None
        if not 0 <= v < vertex_count:
            raise FormatError(f"vertex {v} out of range", lineno)
        if c not in (0, 1):
            raise FormatError(f"color {c} must be 0 or 1", lineno)
        got[v] = c
    missing = [v for v in range(vertex_count) if v not in got]
    if missing:
        raise FormatError(f"coloring misses vertex {missing[0]}")
    return [got[v] for v in range(vertex_count)]


def emit_orientation(o: FunctionalOrientation) -> str:
    return "".join(
        f"o {e} {_MARK_NAMES[Mark(int(m))]}\n" for e, m in enumerate(o.marks)
    )


def parse_orientation(text: str, edge_count: int) -> FunctionalOrientation:
    marks = [None] * edge_count
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0] != "o":
            continue
        if len(parts) != 3:
            raise FormatError("orientation line needs edge id and mark", lineno)
        try:
            e = int(parts[1])
        except ValueError:
            raise FormatError("edge id must be an integer", lineno) from None
        if not 0 <= e < edge_count:
            raise FormatError(f"edge id {e} out of range", lineno)
        mark = _MARK_VALUES.get(parts[2])
        if mark is None:
            raise FormatError(f"unknown mark {parts[2]!r}", lineno)
        marks[e] = mark
    missing = [e for e, m in enumerate(marks) if m is None]
    if missing:
        raise FormatError(f"orientation misses edge {missing[0]}")
    return FunctionalOrientation(marks)


def parse_cnf(text: str) -> CnfFormula:
    """DIMACS CNF with exactly-3-literal clauses; 1- and 2-literal clauses
    are padded by repeating their last literal."""
    num_vars = None
    num_clauses = None
    tokens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            if num_vars is not None:
                raise FormatError("duplicate problem line", lineno)
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise FormatError("problem line must be 'p cnf <vars> <clauses>'", lineno)
            try:
                num_vars, num_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise FormatError("problem line counts must be integers", lineno) from None
            continue
        if num_vars is None:
            raise FormatError("clause before problem line", lineno)
        for tok in line.split():
            try:
                tokens.append((int(tok), lineno))
            except ValueError:
                raise FormatError(f"bad literal {tok!r}", lineno) from None
    if num_vars is None:
        raise FormatError("missing problem line")

    clauses = []
    cur = []
    for lit, lineno in tokens:
        if lit == 0:
            if cur:
                clauses.append(_pad_clause(cur, lineno))
                cur = []
            continue
        if abs(lit) > num_vars:
            raise FormatError(f"literal {lit} out of range", lineno)
        cur.append(lit)
        if len(cur) > 3:
            raise FormatError("clause has more than 3 literals", lineno)
    if cur:
        clauses.append(_pad_clause(cur, tokens[-1][1]))
    if num_clauses != len(clauses):
        raise FormatError(f"header promises {num_clauses} clauses, found {len(clauses)}")
    return CnfFormula(num_vars=num_vars, clauses=tuple(clauses))


def _pad_clause(lits, lineno):
    if not lits:
        raise FormatError("empty clause", lineno)
    while len(lits) < 3:
        lits.append(lits[-1])
    return tuple(lits)


def emit_cnf(f: CnfFormula) -> str:
    lines = [f"p cnf {f.num_vars} {len(f.clauses)}"]
    lines.extend(" ".join(str(lit) for lit in c) + " 0" for c in f.clauses)
    return "\n".join(lines) + "\n"


def emit_witness(out: ReductionOutput) -> str:
    w = out.witness
    lines = [f"formula {out.formula.num_vars} {len(out.formula.clauses)}"]
    lines.extend(
        "clause_lits " + " ".join(str(lit) for lit in c) for c in out.formula.clauses
    )
    lines.append(f"planarized {int(out.planarized)}")
    lines.append(f"crossings {out.stats.crossings}")
    lines.append(f"root_output {w.root_output}")
    for i, vp in enumerate(w.variables):
        lines.append(f"var {i + 1} pos {vp.positive} neg {vp.negative}")
    for i, cp in enumerate(w.clauses):
        lines.append(
            f"clause_ports {i} in {cp.inputs[0]} {cp.inputs[1]} {cp.inputs[2]} out {cp.output}"
        )
    for inst in w.registry:
        params = ",".join(str(p) for p in inst.params)
        mapping = " ".join(str(v) for v in inst.mapping)
        lines.append(f"gadget {inst.kind} [{params}] {inst.role} {mapping}")
    for s in out.layout.bottom:
        lines.append(f"slot bottom {s.x} {s.vertex}")
    for s in out.layout.top:
        lines.append(f"slot top {s.x} {s.vertex}")
    for b, t in out.layout.wires:
        lines.append(f"wire {b} {t}")
    for k, v in sorted(out.stats.gadget_counts.items()):
        lines.append(f"count {k} {v}")
    return "\n".join(lines) + "\n"


def parse_witness(text: str, graph: Multigraph) -> ReductionOutput:
    """Rebuild a ReductionOutput from a witness document plus its graph."""
    num_vars = num_clauses = None
    clause_lits = []
    planarized = False
    crossings = 0
    root_output = None
    variables = {}
    clause_ports = {}
    registry = []
    bottom = []
    top = []
    wires = []
    counts = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0].startswith("#"):
            continue
        key = parts[0]
        try:
            if key == "formula":
                num_vars, num_clauses = int(parts[1]), int(parts[2])
            elif key == "clause_lits":
                clause_lits.append(tuple(int(x) for x in parts[1:]))
            elif key == "planarized":
                planarized = bool(int(parts[1]))
            elif key == "crossings":
                crossings = int(parts[1])
            elif key == "root_output":
                root_output = int(parts[1])
            elif key == "var":
                variables[int(parts[1])] = VariablePorts(int(parts[3]), int(parts[5]))
            elif key == "clause_ports":
                clause_ports[int(parts[1])] = ClausePorts(
                    (int(parts[3]), int(parts[4]), int(parts[5])), int(parts[7])
                )
            elif key == "gadget":
                params = tuple(int(x) for x in parts[2].strip("[]").split(",") if x)
                registry.append(
                    GadgetInstance(parts[1], params, parts[3], tuple(int(x) for x in parts[4:]))
                )
            elif key == "slot":
                (bottom if parts[1] == "bottom" else top).append(
                    Slot(int(parts[2]), int(parts[3]))
                )
            elif key == "wire":
                wires.append((int(parts[1]), int(parts[2])))
            elif key == "count":
                counts[parts[1]] = int(parts[2])
            else:
                raise FormatError(f"unknown witness key {key!r}", lineno)
        except (IndexError, ValueError) as exc:
            if isinstance(exc, FormatError):
                raise
            raise FormatError(f"malformed {key!r} line", lineno) from None
    if num_vars is None or root_output is None:
        raise FormatError("witness document incomplete")
    if len(clause_lits) != num_clauses:
        raise FormatError("clause count mismatch in witness document")
    formula = CnfFormula(num_vars=num_vars, clauses=tuple(clause_lits))
    witness = WitnessMap(
        variables=tuple(variables[i + 1] for i in range(num_vars)),
        clauses=tuple(clause_ports[i] for i in range(num_clauses)),
        root_output=root_output,
        registry=tuple(registry),
    )
    layout = TwoRowLayout(bottom=tuple(bottom), top=tuple(top), wires=tuple(wires))
    stats = ReductionStats(
        vertex_count=graph.vertex_count,
        edge_count=graph.edge_count,
        max_degree=graph.max_degree(),
        gadget_counts=counts,
        crossings=crossings,
        xo_count=counts.get("xo", 0),
    )
    return ReductionOutput(
        formula=formula,
        graph=graph,
        witness=witness,
        layout=layout,
        planarized=planarized,
        stats=stats,
    )


def emit_dot(g: Multigraph, ports: dict | None = None) -> str:
    """Diagnostic DOT export: parallel edges as distinct arcs, gadget port
    vertices boxed and labeled."""
    port_names = {}
    if ports:
        for name, v in ports.items():
            port_names.setdefault(v, []).append(name)
    lines = ["graph fo2 {", "  node [shape=circle];"]
    for v in range(g.vertex_count):
        if v in port_names:
            label = ",".join(sorted(port_names[v]))
            lines.append(f'  v{v} [shape=box, label="{v}:{label}"];')
        else:
            lines.append(f'  v{v} [label="{v}"];')
    for u, v in g.edges:
        lines.append(f"  v{u} -- v{v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
