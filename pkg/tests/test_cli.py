"""Command-line surface: deterministic reports and exit codes."""

import json

import pytest

from stringalg.cli import run

from conftest import (CYCLE_PENDANT, DOUBLED_THREE_CYCLE, KRONECKER,
                      TWO_CYCLE_REL)

EXAMPLE_MATRIX = """6*x^3 - 4*x^2, -3*x + 2, 9*x^2 - 4
2*x^2 - 1, -1, 3*x + 2
2*x^3, -x + 1, 3*x^2 + 2*x
"""


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return write


def test_validate_kronecker(files, capsys):
    code = run(["validate", files("k.quiver", KRONECKER)])
    assert code == 0
    assert capsys.readouterr().out.strip() == "gentle; finite-dimensional; dim 4"


def test_validate_reports_invalid(files, capsys):
    bad = "vertex 1\nvertex 2\narrow a : 1 -> 2\narrow b : 1 -> 2\narrow c : 1 -> 2\n"
    code = run(["validate", files("bad.quiver", bad)])
    assert code == 2
    out = capsys.readouterr().out
    assert "invalid" in out and "indegree 3" in out


def test_validate_locally_string(files, capsys):
    code = run(["validate", files("p.quiver", CYCLE_PENDANT)])
    assert code == 0
    assert capsys.readouterr().out.strip() == "locally-gentle; infinite-dimensional"


def test_validate_syntax_error_exit(files, capsys):
    assert run(["validate", files("s.quiver", "vertex 1\narrow a : 1 ->")]) == 2


def test_basis(files, capsys):
    code = run(["--max-len", "4", "basis", files("q.quiver", TWO_CYCLE_REL)])
    assert code == 0
    assert capsys.readouterr().out.split() == [
        "e_1", "e_2", "a", "b", "a.b", "b.a", "a.b.a", "b.a.b"]


def test_maximal_report(files, capsys):
    code = run(["maximal", files("q.quiver", CYCLE_PENDANT)])
    assert code == 0
    assert capsys.readouterr().out == (
        "finite maximal:\n  c\ninfinite maximal:\n  (a.b)^inf\n")


def test_radical(files, capsys):
    code = run(["radical", files("q.quiver", CYCLE_PENDANT)])
    assert code == 0
    assert capsys.readouterr().out.split() == ["c"]


def test_center0(files, capsys):
    code = run(["center0", files("q.quiver", TWO_CYCLE_REL)])
    assert code == 0
    assert capsys.readouterr().out.strip() == "degree-0 center dimension: 1"


def test_derivation_and_exp(files, capsys):
    q = files("q.quiver", TWO_CYCLE_REL)
    d = files("d.map", "map a = 1*a.b.a\n")
    assert run(["derivation", q, d]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "valid derivation; types: cycle, maximal"
    assert run(["exp", q, d]) == 0
    out = capsys.readouterr().out
    assert "map a = 1*a + 1*a.b.a" in out
    assert "map b = 1*b" in out


def test_derivation_error_exit(files, capsys):
    q = files("q.quiver", TWO_CYCLE_REL)
    bad = files("d.map", "map a = 1*a.b\n")
    assert run(["derivation", q, bad]) == 3


def test_exp_cap_exit(files, capsys):
    q = files("q.quiver", TWO_CYCLE_REL)
    bad = files("d.map", "map a = 1*a\n")
    assert run(["exp", q, bad]) == 4


def test_inner(files, capsys):
    q = files("q.quiver", TWO_CYCLE_REL)
    u = files("u.element", "1 - 1*a.b + 1*b.a\n")
    assert run(["inner", q, u]) == 0
    out = capsys.readouterr().out
    assert "unit: 1 - 1*a.b + 1*b.a" in out
    assert "map a = 1*a + 2*a.b.a" in out
    assert "map b = 1*b - 2*b.a.b" in out


def test_inner_not_a_unit_exit(files, capsys):
    q = files("q.quiver", "vertex 1\nvertex 2\narrow a : 1 -> 2\narrow b : 2 -> 1\n")
    u = files("u.element", "1 + 1*a.b\n")
    assert run(["inner", q, u]) == 3


def test_decompose_inner_map(files, capsys):
    q = files("q.quiver", TWO_CYCLE_REL)
    m = files("f.map", "map a = 1*a + 2*a.b.a\nmap b = 1*b - 2*b.a.b\n")
    assert run(["decompose", q, m]) == 0
    out = capsys.readouterr().out
    lines = out.splitlines()
    assert lines[0] == "factor 1: exp-maximal (trivial)"
    assert lines[1] == "factor 2: endpoint-preserving (trivial)"
    assert lines[2] == "factor 3: inner"
    assert lines[3] == "  unit 1 + 2*b.a"
    assert lines[4] == "verified: true"


def test_decompose_rejects_uncertifiable(files, capsys):
    q = files("q.quiver", TWO_CYCLE_REL)
    m = files("f.map", "map a = 1*a + 1*a.b\n")
    assert run(["decompose", q, m]) == 3


def test_smith(files, capsys):
    m = files("m.mat", EXAMPLE_MATRIX)
    assert run(["smith", m]) == 0
    out = capsys.readouterr().out
    assert "verified: true" in out
    assert out.startswith("U = ")
    assert "sigma = " in out


def test_outer_class(files, capsys):
    assert run(["outer-class", files("k.quiver", KRONECKER)]) == 0
    assert "group: GL_2(k)" in capsys.readouterr().out
    assert run(["outer-class", files("d.quiver", DOUBLED_THREE_CYCLE)]) == 0
    assert "group: Z/2Z ⋉ (k^x)^6" in capsys.readouterr().out


def test_outer_class_not_gentle_exit(files, capsys):
    assert run(["outer-class", files("q.quiver", TWO_CYCLE_REL)]) == 2


def test_json_mode(files, capsys):
    code = run(["--json", "validate", files("k.quiver", KRONECKER)])
    assert code == 0
    data = json.loads(capsys.readouterr().out)
    assert data["classification"] == "gentle"
    assert data["dimension"] == 4


def test_usage_error_exit(capsys):
    assert run(["no-such-command"]) == 64
    assert run([]) == 64


def test_missing_file_exit(capsys):
    assert run(["validate", "/nonexistent/q.quiver"]) == 2


def test_byte_stable_output(files, capsys):
    q = files("q.quiver", CYCLE_PENDANT)
    run(["maximal", q])
    first = capsys.readouterr().out
    run(["maximal", q])
    assert capsys.readouterr().out == first


def test_nonpositive_cap_is_usage_error(files, capsys):
    q = files("q.quiver", KRONECKER)
    assert run(["--max-len", "0", "validate", q]) == 64
    assert run(["--cap-degree", "-1", "validate", q]) == 64
