import pytest

from fo2color import Multigraph, build_full_orientation
from fo2color.cli import main
from fo2color.formats import (
    FormatError,
    emit_cnf,
    emit_coloring,
    emit_dot,
    emit_graph,
    emit_orientation,
    emit_witness,
    parse_cnf,
    parse_coloring,
    parse_graph,
    parse_orientation,
    parse_witness,
)
from fo2color.reduction import CnfFormula, compile_formula, planarize

from conftest import tripled_triangle_graph, two_triangle_graph


def test_graph_round_trip():
    g = two_triangle_graph()
    text = emit_graph(g)
    h = parse_graph(text)
    assert h.vertex_count == g.vertex_count
    assert h.edges == g.edges
    assert emit_graph(h) == text


def test_graph_format_example():
    g = parse_graph("graph 2\ne 0 1\ne 0 1\n")
    assert g.vertex_count == 2
    assert g.multiplicity(0, 1) == 2


def test_graph_parse_errors_carry_line_numbers():
    with pytest.raises(FormatError) as exc:
        parse_graph("graph 2\ne 0 0\n")
    assert exc.value.line == 2
    with pytest.raises(FormatError):
        parse_graph("e 0 1\n")
    with pytest.raises(FormatError) as exc:
        parse_graph("graph 2\ne 0 5\n")
    assert "out of range" in str(exc.value)


def test_not_gadget_graph_emission():
    from fo2color.gadgets import build

    text = emit_graph(build("not").graph)
    assert text == "graph 2\ne 0 1\ne 0 1\ne 0 1\n"


def test_coloring_round_trip_ignores_other_lines():
    text = emit_coloring([0, 1, 1]) + "o 0 fwd\n# comment\n"
    assert parse_coloring(text, 3) == [0, 1, 1]
    with pytest.raises(FormatError):
        parse_coloring("c 0 1\n", 2)  # vertex 1 missing


def test_orientation_round_trip():
    # Path hanging off a cycle plus an isolated doubled edge: exercises
    # fwd, rev, both and (via orient_for_coloring elsewhere) none.
    g = Multigraph.from_edges(7, [(0, 1), (1, 2), (2, 0), (2, 3), (4, 5), (4, 5)])
    o = build_full_orientation(g)
    text = emit_orientation(o)
    assert parse_orientation(text, g.edge_count) == o
    with pytest.raises(FormatError):
        parse_orientation(text, g.edge_count + 1)


def test_parse_cnf_three_vars_two_clauses():
    f = parse_cnf("p cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n")
    assert f.num_vars == 3
    assert f.clauses == ((1, 2, 3), (-1, -2, -3))
    assert emit_cnf(f) == "p cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n"


def test_parse_cnf_pads_short_clauses():
    f = parse_cnf("p cnf 1 1\n1 0\n")
    assert f.clauses == ((1, 1, 1),)


def test_parse_cnf_errors():
    with pytest.raises(FormatError):
        parse_cnf("p cnf 1 1\n1 2 0\n")  # literal out of range
    with pytest.raises(FormatError):
        parse_cnf("p cnf 4 1\n1 2 3 4 0\n")  # too many literals
    with pytest.raises(FormatError):
        parse_cnf("1 0\n")  # missing header
    with pytest.raises(FormatError):
        parse_cnf("p cnf 1 2\n1 0\n")  # clause count mismatch


def test_parse_cnf_allows_comments_and_multiline_clauses():
    f = parse_cnf("c a comment\np cnf 2 1\n1\n-2 1 0\n")
    assert f.clauses == ((1, -2, 1),)


@pytest.mark.parametrize("planar", [False, True])
def test_witness_round_trip_byte_identical(planar):
    out = compile_formula(CnfFormula(3, [(1, 2, 3), (-1, -2, -3)]))
    if planar:
        out = planarize(out)
    doc = emit_witness(out)
    parsed = parse_witness(doc, out.graph)
    assert parsed.witness == out.witness
    assert parsed.layout == out.layout
    assert parsed.formula == out.formula
    assert parsed.planarized == out.planarized
    assert emit_witness(parsed) == doc


def test_dot_export_marks_ports_and_parallel_edges():
    from fo2color.gadgets import build

    t = build("not")
    dot = emit_dot(t.graph, ports={"x": 0, "y": 1})
    assert dot.count("v0 -- v1;") == 3
    assert 'shape=box, label="0:x"' in dot


# -- command line ------------------------------------------------------


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_cli_solve_unsatisfiable_graph(tmp_path, capsys):
    path = tmp_path / "triple.graph"
    path.write_text(emit_graph(tripled_triangle_graph()))
    code, _ = run_cli(capsys, "solve", str(path))
    assert code == 1
    code, out = run_cli(capsys, "solve", str(path), "--count")
    assert code == 1  # zero colorings is a refutation
    assert out == "count 0\n"
    single = tmp_path / "edge.graph"
    single.write_text("graph 2\ne 0 1\n")
    code, out = run_cli(capsys, "solve", str(single), "--count")
    assert code == 0
    assert out == "count 4\n"


def test_cli_greedy_then_verify_pipeline(tmp_path, capsys):
    graph_path = tmp_path / "g.graph"
    code, text = run_cli(capsys, "gen", "--vertices", "120", "--max-degree", "5", "--seed", "9")
    assert code == 0
    graph_path.write_text(text)
    code, colored = run_cli(capsys, "greedy", str(graph_path))
    assert code == 0
    out_path = tmp_path / "g.coloring"
    out_path.write_text(colored)
    code, verdict = run_cli(capsys, "verify", str(graph_path), str(out_path))
    assert code == 0
    assert verdict.startswith("valid")


def test_cli_gen_deterministic(capsys):
    _, a = run_cli(capsys, "gen", "--vertices", "50", "--max-degree", "3", "--seed", "4")
    _, b = run_cli(capsys, "gen", "--vertices", "50", "--max-degree", "3", "--seed", "4")
    assert a == b


def test_cli_reduce_planar_and_audit(tmp_path, capsys):
    cnf = tmp_path / "phi.cnf"
    cnf.write_text("p cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n")
    prefix = str(tmp_path / "phi")
    code, out = run_cli(capsys, "reduce", str(cnf), "--planar", "-o", prefix)
    assert code == 0
    assert "planar true" in out
    assert "max_degree 6 (ok)" in out
    code, out = run_cli(capsys, "audit", prefix)
    assert code == 0
    assert "planar true" in out


def test_cli_roundtrip(tmp_path, capsys):
    cnf = tmp_path / "f.cnf"
    cnf.write_text("p cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n")
    assign = tmp_path / "a.txt"
    assign.write_text("1 -2 -3\n")
    code, out = run_cli(capsys, "roundtrip", str(cnf), str(assign))
    assert code == 0
    assert "coloring valid" in out
    assign.write_text("1 2 3\n")  # falsifies the second clause
    code, out = run_cli(capsys, "roundtrip", str(cnf), str(assign))
    assert code == 1


def test_cli_orient_certificate(tmp_path, capsys):
    path = tmp_path / "t.graph"
    path.write_text("graph 2\ne 0 1\ne 0 1\ne 0 1\n")
    code, out = run_cli(capsys, "orient", str(path))
    assert code == 1
    assert "cyclomatic 2" in out


def test_cli_solve_budget_exhaustion(tmp_path, capsys):
    path = tmp_path / "g.graph"
    path.write_text(emit_graph(two_triangle_graph()))
    code, out = run_cli(capsys, "solve", str(path), "--budget", "2")
    assert code == 2
    assert out == "indeterminate\n"


def test_cli_usage_errors(tmp_path, capsys):
    assert main(["solve"]) == 3
    assert main(["gadget", "bogus"]) == 3
    assert main(["solve", str(tmp_path / "missing.graph")]) == 3
    bad = tmp_path / "bad.graph"
    bad.write_text("graph 2\ne 0 0\n")
    assert main(["solve", str(bad)]) == 3


def test_cli_gadget_verify_and_export(capsys):
    code, out = run_cli(capsys, "gadget", "var:2,2", "--verify")
    assert code == 0
    assert "pass" in out
    code, out = run_cli(capsys, "gadget", "eq", "--export")
    assert code == 0
    assert "# port x 0" in out
    assert out.count("\ne ") == 21


def test_cli_dot_reads_port_comments(tmp_path, capsys):
    code, exported = run_cli(capsys, "gadget", "not", "--export")
    path = tmp_path / "not.graph"
    path.write_text(exported)
    code, dot = run_cli(capsys, "dot", str(path))
    assert code == 0
    assert 'label="0:x"' in dot


def test_cli_byte_identical_reruns(tmp_path, capsys):
    path = tmp_path / "g.graph"
    path.write_text(emit_graph(two_triangle_graph()))
    _, a = run_cli(capsys, "solve", str(path))
    _, b = run_cli(capsys, "solve", str(path))
    assert a == b
