"""Command line surface.

Exit codes: 0 = yes/valid, 1 = no/invalid, 2 = indeterminate (search budget
exhausted), 3 = usage or input error. All outputs are deterministic for
identical inputs, flags and seeds. FO2_BUDGET_NODES sets the default
search-node budget for commands that solve.
"""

from __future__ import annotations

import argparse
import sys

from . import formats
from .gadgets import KINDS, build, verify_template
from .greedy import fo2color_delta5, random_multigraph
from .orientation import (
    InfeasibilityCertificate,
    build_full_orientation,
    verify_fo2coloring,
)
from .reduction import (
    assignment_to_coloring,
    audit,
    coloring_to_assignment,
    compile_formula,
    planarize,
)
from .solver import INDETERMINATE, SolveLimits, count, decide

EXIT_YES = 0
EXIT_NO = 1
EXIT_INDETERMINATE = 2
EXIT_USAGE = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _read(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(path, text):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _load_graph(path):
    return formats.parse_graph(_read(path))


def _limits(args):
    budget = getattr(args, "budget", None)
    return SolveLimits(max_nodes=budget)


def _cmd_orient(args, out):
    g = _load_graph(args.graph)
    result = build_full_orientation(g)
    if isinstance(result, InfeasibilityCertificate):
        comp = result.component
        out.write(
            f"infeasible component: {len(comp.vertices)} vertices, "
            f"{comp.edge_count} edges, cyclomatic {comp.cyclomatic}\n"
        )
        out.write("vertices " + " ".join(map(str, comp.vertices)) + "\n")
        return EXIT_NO
    out.write(formats.emit_orientation(result))
    return EXIT_YES


def _cmd_verify(args, out):
    g = _load_graph(args.graph)
    coloring = formats.parse_coloring(_read(args.coloring), g.vertex_count)
    offenders = verify_fo2coloring(g, coloring)
    if not offenders:
        out.write("valid\n")
        return EXIT_YES
    out.write(f"invalid: {len(offenders)} offending component(s)\n")
    for comp in offenders:
        out.write(
            f"component cyclomatic {comp.cyclomatic}: "
            + " ".join(map(str, comp.vertices))
            + "\n"
        )
    return EXIT_NO


def _cmd_greedy(args, out):
    g = _load_graph(args.graph)
    if g.max_degree() > 5:
        out.write(f"maximum degree {g.max_degree()} exceeds 5\n")
        return EXIT_NO
    coloring, orientation = fo2color_delta5(g)
    out.write(formats.emit_coloring(coloring))
    out.write(formats.emit_orientation(orientation))
    return EXIT_YES


def _cmd_solve(args, out):
    g = _load_graph(args.graph)
    limits = _limits(args)
    if args.count:
        value = count(g, limits)
        if value is INDETERMINATE:
            out.write("indeterminate\n")
            return EXIT_INDETERMINATE
        out.write(f"count {value}\n")
        return EXIT_YES if value > 0 else EXIT_NO
    res = decide(g, limits)
    if res.is_yes:
        out.write(formats.emit_coloring(res.coloring))
        return EXIT_YES
    if res.is_no:
        out.write("no\n")
        return EXIT_NO
    out.write("indeterminate\n")
    return EXIT_INDETERMINATE


def _parse_gadget_kind(text):
    kind = text.lower()
    params = ()
    if kind.startswith("var"):
        rest = kind[3:].strip(":()")
        kind = "var"
        if rest:
            try:
                n, m = (int(x) for x in rest.replace(",", " ").split())
            except ValueError:
                raise _UsageError(f"bad var parameters in {text!r}; use var:N,M") from None
            params = (n, m)
        else:
            params = (1, 1)
    if kind not in KINDS:
        raise _UsageError(f"unknown gadget kind {text!r}; choose from {', '.join(KINDS)}")
    return kind, params


def _cmd_gadget(args, out):
    kind, params = _parse_gadget_kind(args.kind)
    t = build(kind, params)
    ports = dict(zip(t.port_names, t.ports))
    if args.verify:
        report = verify_template(t)
        out.write(str(report) + "\n")
        return EXIT_YES if report.ok else EXIT_NO
    if args.export:
        comments = [f"gadget {kind}{params if params else ''}"]
        comments += [f"port {name} {v}" for name, v in ports.items()]
        out.write(formats.emit_graph(t.graph, comments=comments))
        return EXIT_YES
    out.write(
        f"gadget {kind}{params if params else ''}: {t.graph.vertex_count} vertices, "
        f"{t.graph.edge_count} edges, connection degree {t.connection_degree()}, "
        f"{len(t.allowed)}/{2 ** len(t.ports)} port patterns\n"
    )
    out.write("ports: " + " ".join(f"{n}={v}" for n, v in ports.items()) + "\n")
    return EXIT_YES


def _cmd_reduce(args, out):
    formula = formats.parse_cnf(_read(args.cnf))
    compiled = compile_formula(formula)
    if args.planar:
        compiled = planarize(compiled)
    prefix = args.output or _strip_ext(args.cnf)
    _write(prefix + ".graph", formats.emit_graph(compiled.graph))
    _write(prefix + ".witness", formats.emit_witness(compiled))
    report = audit(compiled)
    for line in report.lines():
        out.write(line + "\n")
    out.write(f"wrote {prefix}.graph and {prefix}.witness\n")
    return EXIT_YES if report.ok else EXIT_NO


def _strip_ext(path):
    return path[: path.rfind(".")] if "." in path.rsplit("/", 1)[-1] else path


def _cmd_audit(args, out):
    g = _load_graph(args.prefix + ".graph")
    compiled = formats.parse_witness(_read(args.prefix + ".witness"), g)
    report = audit(compiled)
    for line in report.lines():
        out.write(line + "\n")
    return EXIT_YES if report.ok else EXIT_NO


def _parse_assignment(text, num_vars):
    values = {}
    for tok in text.split():
        if tok in ("v", "s", "0"):
            continue
        try:
            lit = int(tok)
        except ValueError:
            raise _UsageError(f"bad assignment token {tok!r}") from None
        if lit == 0:
            continue
        if abs(lit) > num_vars:
            raise _UsageError(f"assignment literal {lit} out of range")
        values[abs(lit)] = lit > 0
    missing = [v for v in range(1, num_vars + 1) if v not in values]
    if missing:
        raise _UsageError(f"assignment misses variable {missing[0]}")
    return [values[v] for v in range(1, num_vars + 1)]


def _cmd_roundtrip(args, out):
    formula = formats.parse_cnf(_read(args.cnf))
    assignment = _parse_assignment(_read(args.assignment), formula.num_vars)
    if not formula.satisfies(assignment):
        out.write("assignment does not satisfy the formula\n")
        return EXIT_NO
    compiled = compile_formula(formula)
    if args.planar:
        compiled = planarize(compiled)
    coloring = assignment_to_coloring(compiled, assignment)
    recovered = coloring_to_assignment(compiled, coloring)
    out.write("coloring valid\n")
    out.write(
        "assignment "
        + " ".join(("" if val else "-") + str(v + 1) for v, val in enumerate(recovered))
        + "\n"
    )
    return EXIT_YES if formula.satisfies(recovered) else EXIT_NO


def _cmd_gen(args, out):
    if args.vertices < 0 or args.max_degree < 0:
        raise _UsageError("--vertices and --max-degree must be non-negative")
    g = random_multigraph(args.vertices, args.max_degree, args.seed)
    out.write(formats.emit_graph(g, comments=[f"gen vertices={args.vertices} max-degree={args.max_degree} seed={args.seed}"]))
    return EXIT_YES


def _cmd_dot(args, out):
    text = _read(args.graph)
    g = formats.parse_graph(text)
    ports = {}
    for raw in text.splitlines():
        parts = raw.split()
        if len(parts) == 4 and parts[0] == "#" and parts[1] == "port":
            ports[parts[2]] = int(parts[3])
    out.write(formats.emit_dot(g, ports=ports or None))
    return EXIT_YES


def _build_parser():
    p = _Parser(prog="fo2color", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("orient", help="full functional orientation or infeasibility certificate")
    sp.add_argument("graph")
    sp.set_defaults(func=_cmd_orient)

    sp = sub.add_parser("verify", help="check a 2-coloring against the FO 2-coloring condition")
    sp.add_argument("graph")
    sp.add_argument("coloring")
    sp.set_defaults(func=_cmd_verify)

    sp = sub.add_parser("greedy", help="linear-time FO 2-coloring for max degree <= 5")
    sp.add_argument("graph")
    sp.set_defaults(func=_cmd_greedy)

    sp = sub.add_parser("solve", help="exact decision (or counting) by backtracking search")
    sp.add_argument("graph")
    sp.add_argument("--count", action="store_true", help="count all FO 2-colorings")
    sp.add_argument("--budget", type=int, default=None, help="search-node budget")
    sp.set_defaults(func=_cmd_solve)

    sp = sub.add_parser("gadget", help="build, verify or export a gadget template")
    sp.add_argument("kind", help="not, eq, ne, or, xo, or var:N,M")
    sp.add_argument("--verify", action="store_true", help="recompute and check the port table")
    sp.add_argument("--export", action="store_true", help="emit the gadget graph file")
    sp.set_defaults(func=_cmd_gadget)

    sp = sub.add_parser("reduce", help="compile DIMACS 3-CNF to an FO 2-coloring instance")
    sp.add_argument("cnf")
    sp.add_argument("--planar", action="store_true", help="planarize via crossover gadgets")
    sp.add_argument("-o", "--output", default=None, help="output file prefix")
    sp.set_defaults(func=_cmd_reduce)

    sp = sub.add_parser("audit", help="degree/planarity audit of a reduce output")
    sp.add_argument("prefix")
    sp.set_defaults(func=_cmd_audit)

    sp = sub.add_parser("roundtrip", help="assignment -> coloring -> assignment check")
    sp.add_argument("cnf")
    sp.add_argument("assignment")
    sp.add_argument("--planar", action="store_true")
    sp.set_defaults(func=_cmd_roundtrip)

    sp = sub.add_parser("gen", help="seeded random loopless multigraph")
    sp.add_argument("--vertices", type=int, required=True)
    sp.add_argument("--max-degree", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.set_defaults(func=_cmd_gen)

    sp = sub.add_parser("dot", help="DOT export of a graph file")
    sp.add_argument("graph")
    sp.set_defaults(func=_cmd_dot)
    return p


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args, sys.stdout)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except formats.FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
