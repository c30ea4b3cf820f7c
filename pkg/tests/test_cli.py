import json

import pytest

from degenab.cli import Config, main
from degenab.cubics import CubicVerdict
from degenab.degeneration import ThetaLimit
from degenab.delaunay import DelaunayComplex
from degenab.errors import UserInputError


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_delaunay_text(capsys):
    code, out, _ = run(capsys, "delaunay", "--form", "2,-1;-1,2", "--format", "text")
    assert code == 0 and out.startswith("counts [1, 3, 2] euler 0")


def test_delaunay_json_round_trip_and_determinism(capsys):
    _, a, _ = run(capsys, "delaunay", "--form", "2,-1,0;-1,2,-1;0,-1,2")
    _, b, _ = run(capsys, "delaunay", "--form", "2,-1,0;-1,2,-1;0,-1,2")
    assert a == b
    cx = DelaunayComplex.from_json(json.loads(a))
    assert cx.counts() == (1, 6, 8, 3)


def test_delaunay_oracle_and_svg(capsys):
    code, out, _ = run(capsys, "delaunay", "--form", "2,0;0,2", "--oracle", "--format", "text")
    assert code == 0 and "counts [1, 2, 1]" in out
    code, out, _ = run(capsys, "delaunay", "--form", "2,0;0,2", "--svg")
    assert code == 0 and "<svg" in out


@pytest.mark.parametrize("argv", [
    ["delaunay", "--form", "1,2;2,1"],
    ["delaunay", "--form", "3"],
    ["delaunay", "--form", "2,1"],
    ["delaunay", "--form", "2", "--mod-y", "0"],
    ["theta-limit", "--form", "2", "--lambda", "1,2"],
    ["cubic", "--coeffs", "x0^2"],
    ["cubic", "--coeffs", "x0^3 +"],
    ["hesse", "--mu", "[0:0]"],
    ["heisenberg", "--h", "4,2"],
    ["theta-limit", "--form", "2", "--lambda", "0", "--unit-matrix", "1"],
])
def test_invalid_input_exits_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["delaunay"])
    assert exc.value.code == 2


def test_inconclusive_exits_3(capsys):
    code, _, err = run(capsys, "theta-limit", "--form", "2", "--y", "3", "--lambda", "1/2", "--numeric", "--cutoff", "1/2")
    assert code == 3 and err.startswith("inconclusive:")
    code, _, _ = run(capsys, "delaunay", "--form", "2,0;0,2", "--oracle", "--radius", "2")
    assert code == 3


@pytest.mark.parametrize("lam,want", [("0", "[1, 0, 0]"), ("1/2", "[1, ū, 0]"), ("3/2", "[0, 1, ū]"), ("5/2", "[ū, 0, 1]")])
def test_theta_limit_text(capsys, lam, want):
    code, out, _ = run(capsys, "theta-limit", "--form", "2", "--y", "3", "--lambda", lam, "--format", "text")
    assert code == 0 and out.splitlines()[0] == want


def test_theta_limit_json_and_numeric(capsys):
    code, out, _ = run(capsys, "theta-limit", "--form", "2,0;0,2", "--y", "2", "--lambda", "1/2,1/2",
                       "--unit-matrix", "0,1;1,0", "--alpha", "z5", "--numeric")
    obj = json.loads(out)
    assert code == 0 and obj["numeric"]["agrees"]
    assert ThetaLimit.from_json(obj).display() == obj["projective"]


def test_theta_series_cutoff_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("DEGENAB_CUTOFF", "10")
    _, out, _ = run(capsys, "theta", "--form", "2", "--y", "3", "--residue", "0", "--format", "text")
    assert out.strip() == "1 + q^9*w^-3 + q^9*w^3"
    _, out, _ = run(capsys, "theta", "--form", "2", "--y", "3", "--residue", "0", "--cutoff", "40", "--format", "text")
    assert "q^36*w^6" in out


def test_validate_chart_strata(capsys):
    _, out, _ = run(capsys, "validate", "--form", "2,-1;-1,2")
    assert json.loads(out)["ok"]
    _, out, _ = run(capsys, "chart", "--form", "2", "--n", "1")
    assert json.loads(out)["relations"] == ["x*y - q^2"]
    _, out, _ = run(capsys, "strata", "--form", "2,0;0,2", "--y", "3,0;0,3", "--unit-matrix", "0,1;1,0", "--alpha", "z7")
    obj = json.loads(out)
    assert obj["component_types"] == {"P1xP1": 9}
    _, out, _ = run(capsys, "strata", "--form", "2", "--y", "3", "--dot")
    assert out.startswith("digraph")


def test_hesse_commands(capsys):
    _, out, _ = run(capsys, "hesse", "--mu", "1")
    assert json.loads(out)["class"] == "Triangle"
    _, out, _ = run(capsys, "hesse", "--action")
    assert json.loads(out)["ok"]
    _, out, _ = run(capsys, "hesse", "--identities")
    assert json.loads(out)["ok"]


def test_cubic_round_trip(capsys, tmp_path):
    path = tmp_path / "v.json"
    code, _, _ = run(capsys, "cubic", "--coeffs", "x2*x1^2 - x0^2*(x0+x2)", "-o", str(path))
    v = CubicVerdict.from_json(json.loads(path.read_text()))
    assert code == 0 and v.row() == ("IrreducibleNode", "SemistableNotGITStable", "Z/2Z")


def test_heisenberg_command(capsys):
    _, out, _ = run(capsys, "heisenberg", "--h", "3", "--check", "order")
    assert json.loads(out)["group_order"] == 27
    code, out, _ = run(capsys, "heisenberg", "--h", "4", "--weight", "2", "--check", "commutant")
    assert code == 0 and json.loads(out)["commutant"] == {"is_scalar": False, "dimension": 2}


def test_config_validation():
    with pytest.raises(UserInputError):
        Config(q0=0)
    with pytest.raises(UserInputError):
        Config(hull_box_radius=1)
