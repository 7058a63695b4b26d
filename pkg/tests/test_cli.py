import io
import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from gtpoly import cli
from gtpoly.marked_poset import MarkedPoset, identity_diagram
from gtpoly.polyoracle import hrep, sorted_vertices
from gtpoly.rootdata import LieType, omega_to_epsilon

GOLDENS = Path(__file__).parent / "goldens"


def call(*argv):
    out = io.StringIO()
    code = cli.run(list(argv), out)
    return code, out.getvalue()


def test_vertices_b2_json():
    code, text = call("vertices", "--family", "B", "--rank", "2", "--omega", "0,1", "--format", "json")
    assert code == 0
    verts = json.loads(text)
    assert len(verts) == 5
    lam = omega_to_epsilon(LieType("B", 2), [0, 1])
    direct = sorted_vertices(hrep("gtB", lam))
    assert [[Fraction(p, q) for p, q in v] for v in verts] == [list(v) for v in direct]


def test_is_lattice_d4_omega4_reports_the_odd_sum_and_witness():
    code, text = call("is-lattice", "--family", "D", "--rank", "4", "--omega", "0,0,0,1")
    assert code == 2
    assert "is odd" in text
    assert "witness" in text


def test_is_lattice_true_exits_zero():
    code, text = call("is-lattice", "--family", "C", "--omega", "1,1", "--format", "json")
    assert code == 0
    assert json.loads(text)["observed"] is True


def test_map_fixture():
    code, text = call("map", "--family", "D", "--rank", "3", "--eps", "4,2,0", "--string", "1,1,3,2,2,1")
    assert code == 0
    values = [Fraction(p, q) for p, q in json.loads(text)["values"]]
    assert values == [3, 1, 1, 2, 0, 1, 0]
    code, back = call("map", "--family", "D", "--eps", "4,2,0", "--pattern", "3,1,1,2,0,1,0", "--format", "text")
    assert code == 0
    assert back.strip() == "(1, 1, 3, 2, 2, 1)"


def test_diagram_golden_and_isolated_node():
    code, text = call("diagram", "--family", "D", "--eps", "2,1,0", "--pattern", "2,0,1,2,0,2,2")
    assert code == 0
    assert text == (GOLDENS / "d3_example.dot").read_text()
    assert "zdown_1 [" in text
    assert not any("zdown_1 --" in line or "-- zdown_1" in line for line in text.splitlines())


def test_diagram_of_the_d4_example_pattern():
    pattern = "4,3,1,2,4,3,0,4,3,0,0,0,0,0"
    code, text = call("diagram", "--family", "D", "--eps", "4,3,2,-1", "--pattern", pattern)
    assert code == 0
    assert text == (GOLDENS / "d4_example.dot").read_text()
    assert text.count('style=""') == 6


def test_header_only_dot_for_the_empty_diagram():
    empty = identity_diagram(MarkedPoset((), (), {}), ())
    assert cli.emit_diagram(empty) == "graph identity {\n}\n"


def test_witness_dot_golden():
    code, text = call("witness", "--family", "D", "--omega", "0,0,0,1", "--format", "dot")
    assert code == 0
    assert text == (GOLDENS / "d_witness_omega4.dot").read_text()
    code, text = call("witness", "--family", "B", "--omega", "0,0,1", "--format", "dot")
    assert text == (GOLDENS / "b_witness_b3_omega3.dot").read_text()


def test_count_dim_interior_reflexive():
    assert call("count", "--family", "A", "--eps", "4,2") == (0, "27\n")
    assert call("count", "--family", "B", "--omega", "0,1") == (0, "4\n")
    assert call("count", "--family", "D", "--omega", "0,0,1") == (0, "4\n")
    assert call("dim", "--family", "A", "--eps", "4,2") == (0, "3\n")
    assert call("interior", "--family", "A", "--eps", "4,2") == (0, "(3, 1, 2)\n")
    assert call("reflexive", "--family", "A", "--eps", "4,2")[0] == 0
    assert call("reflexive", "--family", "A", "--eps", "3,1")[0] == 2
    code, text = call("reflexive", "--family", "D", "--omega", "2,2,2", "--kind", "stringD")
    assert code == 0
    assert "(1, 1, 3, 2, 2, 1)" in text


def test_sweep_examples():
    code, text = call("sweep", "--family", "C", "--rank", "2", "--max-omega", "2", "--format", "json")
    assert code == 0
    assert all(row["observed"] for row in json.loads(text))
    code, text = call("sweep", "--family", "B", "--rank", "2", "--max-omega", "2")
    assert code == 0
    assert text.count("witness:") == 3
    assert text.endswith("9 weights, 0 mismatches\n")
    code, text = call("sweep", "--family", "D", "--rank", "4", "--fundamental", "--format", "json")
    assert [row["observed"] for row in json.loads(text)] == [True, True, False, False]


def test_sweep_plot(tmp_path):
    pytest.importorskip("matplotlib")
    target = tmp_path / "sweep.png"
    code, _ = call("sweep", "--family", "B", "--rank", "2", "--plot", str(target))
    assert code == 0
    assert target.read_bytes().startswith(b"\x89PNG")


def test_text_output_uses_fractions():
    code, text = call("vertices", "--family", "B", "--omega", "0,1")
    assert "1/2" in text and "0.5" not in text


def test_build_text_and_json():
    code, text = call("build", "--family", "D", "--eps", "2,1,0", "--kind", "tweakedD")
    assert code == 0
    assert "1 equalities" in text
    code, text = call("build", "--family", "A", "--eps", "2,1,0", "--format", "json")
    assert json.loads(text)["kind"] == "gtA"


@pytest.mark.parametrize(
    "argv",
    [
        ["vertices", "--family", "A", "--eps", "0,1"],
        ["vertices", "--family", "A", "--eps", "1,0", "--omega", "1"],
        ["vertices", "--family", "A", "--rank", "3", "--eps", "1,0"],
        ["vertices", "--family", "A", "--eps", "1,x"],
        ["map", "--family", "A", "--eps", "1,0", "--string", "0"],
        ["map", "--family", "D", "--eps", "2,1,0", "--pattern", "0,0,0,0,0,0,0"],
        ["witness", "--family", "C", "--eps", "1,0"],
        ["vertices", "--family", "Q", "--eps", "1"],
        ["nonsense"],
    ],
)
def test_errors_exit_one(argv, capsys):
    code, _ = call(*argv)
    assert code == 1


def test_error_message_is_one_line(capsys):
    call("vertices", "--family", "A", "--eps", "0,1")
    err = capsys.readouterr().err.strip()
    assert "\n" not in err and "not dominant" in err


def test_budget_refusal(monkeypatch, capsys):
    monkeypatch.setenv("GTPOLY_MAX_CELLS", "10")
    code, _ = call("count", "--family", "A", "--eps", "4,2")
    assert code == 1
    assert "GTPOLY_MAX_CELLS" in capsys.readouterr().err
    monkeypatch.setenv("GTPOLY_MAX_CELLS", "lots")
    assert call("count", "--family", "A", "--eps", "1,0")[0] == 1


def test_output_is_deterministic():
    argv = ("vertices", "--family", "D", "--omega", "1,0,1", "--format", "json")
    assert call(*argv) == call(*argv)


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "gtpoly.cli", "dim", "--family", "A", "--eps", "2,1"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "3\n"
