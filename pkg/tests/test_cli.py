import io
import subprocess
import sys

import pytest

from coxeter_teich.cli import format_polynomial, parse_structured, parse_substitution, run_cli
from coxeter_teich.laurent import LaurentPoly, SubstitutionError, parse_poly

from conftest import fixture_path, golden


def run(*args):
    out, err = io.StringIO(), io.StringIO()
    code = run_cli(list(args), out, err)
    return code, out.getvalue(), err.getvalue()


def test_compute_a5_preset():
    code, out, err = run("compute", fixture_path("a5"), "--subst", "a-series")
    assert code == 0
    assert out.strip() == (
        "y0^2*y1^2 - 4*y0^2*y1 - 4*y0*y1^2 + 4*y0^2 + 9*y0*y1 + 4*y1^2 - 4*y0 - 4*y1 + 1"
    )
    assert err == ""


def test_compute_explicit_map_equals_preset():
    a = run("compute", fixture_path("a7"), "--subst", "a-series")
    b = run("compute", fixture_path("a7"), "--subst", "x0=y0*y1^-1,u=y1")
    assert a == b


def test_compute_raw_and_basepoint():
    code, out, _ = run("compute", fixture_path("a3"))
    assert out.strip() == "x0*u^2 - 2*x0*u - 2*u + 1"
    code, out2, _ = run("compute", fixture_path("a3"), "--basepoint", "1")
    assert out2 == out
    code, raw, _ = run("compute", fixture_path("a3"), "--raw")
    assert code == 0 and raw.strip()


def test_structured_round_trip():
    code, out, _ = run("compute", fixture_path("gamma2"), "--format", "structured")
    assert code == 0
    p = parse_structured(out)
    code, text, _ = run("compute", fixture_path("gamma2"))
    assert p == parse_poly(text.strip(), ("x0", "u"))


def test_format_polynomial_examples():
    V = ("x0", "u")
    assert format_polynomial(parse_poly("x0*u - 2*x0 - 2*u + 1", V)) == "x0*u - 2*x0 - 2*u + 1"
    assert format_polynomial(LaurentPoly.constant(V, 1)) == "1"
    for p in (golden("a11"), LaurentPoly.constant(V, 1), parse_poly("x0^-2*u - 3", V)):
        assert parse_structured(format_polynomial(p, "structured")) == p


def test_compare():
    code, out, _ = run("compare", fixture_path("gamma1"), fixture_path("gamma2"))
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "DISTINCT" and len(lines) == 3
    for name in ("a3", "a5", "a7", "gamma1", "gamma2"):
        code, out, _ = run("compare", fixture_path(name), fixture_path(name))
        assert out.splitlines()[0] == "EQUIVALENT"


def test_compare_different_ranks():
    code, out, _ = run("compare", fixture_path("a5"), fixture_path("single_edge"))
    assert code == 0 and out.startswith("DISTINCT")


def test_dilatation_command(monkeypatch):
    code, out, _ = run("dilatation", fixture_path("a5"))
    assert code == 0
    lam = float(out.splitlines()[0].split("=")[1])
    assert abs(lam - 4.7912878475) < 1e-9
    assert out.splitlines()[1].startswith("L = 526.99")
    monkeypatch.setenv("COXETER_TEICH_TOL", "1e-3")
    code, coarse, _ = run("dilatation", fixture_path("a5"))
    assert code == 0 and coarse != out
    monkeypatch.setenv("COXETER_TEICH_TOL", "-1")
    assert run("dilatation", fixture_path("a5"))[0] == 2


def test_dilatation_alpha():
    code, out, err = run("dilatation", fixture_path("a3"), "--alpha", "1,1")
    assert code == 0 and "warning" in err and "L =" not in out
    assert run("dilatation", fixture_path("a3"), "--alpha", "1")[0] == 2
    assert run("dilatation", fixture_path("a3"), "--alpha", "a,b")[0] == 2
    assert run("dilatation", fixture_path("a3"), "--alpha", "0,0")[0] == 1
    assert run("dilatation", fixture_path("a3"), "--tol", "0")[0] == 2


def test_degenerate_trees_warn():
    code, out, err = run("dilatation", fixture_path("single_edge"))
    assert code == 0 and "warning" in err and "L =" not in out
    code, out, err = run("compute", fixture_path("single_vertex"))
    assert code == 0 and out.strip() == "1" and "warning" in err
    assert run("dilatation", fixture_path("single_vertex"))[0] == 1


def test_charpoly():
    code, out, _ = run("charpoly", fixture_path("a3"))
    assert out.strip() == "u^4 - 6*u^3 + 10*u^2 - 6*u + 1"


def test_an_command():
    code, out, err = run("an", "5", "--check", "--subst", "a-series")
    assert code == 0 and "agrees" in err
    assert parse_poly(out.strip(), ("y0", "y1")) == golden("a5")
    assert run("an", "6")[0] == 2
    assert run("an", "x")[0] == 2


@pytest.mark.parametrize("name", ["bad_cycle", "bad_inconsistent", "bad_coloring", "bad_syntax"])
def test_malformed_input_exits_2(name):
    code, out, err = run("compute", fixture_path(name))
    assert code == 2 and out == ""
    assert err.startswith("error: line ")


def test_usage_errors():
    assert run()[0] == 2
    assert run("compute", "/nonexistent.ptree")[0] == 2
    assert run("compute", fixture_path("a3"), "--subst", "x0=y0^2")[0] == 2
    assert run("compute", fixture_path("a3"), "--subst", "q=y0")[0] == 2
    assert run("compute", fixture_path("a3"), "--format", "xml")[0] == 2


def test_parse_substitution():
    mapping, new = parse_substitution("a-series", ("x0", "u"))
    assert new == ("y0", "y1")
    mapping, new = parse_substitution("u=t", ("x0", "u"))
    assert new == ("t", "x0")
    with pytest.raises(SubstitutionError):
        parse_substitution("x0", ("x0", "u"))
    with pytest.raises(SubstitutionError):
        parse_substitution("", ("x0", "u"))


def test_deterministic_subprocess():
    cmd = [sys.executable, "-m", "coxeter_teich", "compute", fixture_path("gamma1"), "--subst", "a-series"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a.strip()


def test_subprocess_exit_code_for_cycle():
    cmd = [sys.executable, "-m", "coxeter_teich", "compute", fixture_path("bad_cycle")]
    proc = subprocess.run(cmd, capture_output=True, text=True)
    assert proc.returncode == 2
    assert "line 5" in proc.stderr and proc.stdout == ""
