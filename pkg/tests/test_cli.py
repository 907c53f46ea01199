import json
import subprocess
import sys
from importlib import resources

import pytest
from jsonschema import Draft7Validator

from nbrw.cli import main


@pytest.fixture(scope="module")
def validator():
    text = resources.files("nbrw").joinpath(
        "schemas/report.schema.json").read_text()
    schema = json.loads(text)
    Draft7Validator.check_schema(schema)
    return Draft7Validator(schema)


def run_json(capsys, validator, argv):
    code = main(argv)
    out = capsys.readouterr().out
    doc = json.loads(out)
    errors = [e.message for e in validator.iter_errors(doc)]
    assert not errors, errors
    return code, doc, out


def test_analyze_cycle_structure(capsys, validator):
    code, doc, _ = run_json(capsys, validator,
                            ["analyze", "--builtin", "cycle:6"])
    assert code == 0
    chain = doc["result"]["edge_chain"]
    assert chain["irreducible"] is False
    assert chain["essential_classes"] == 2
    assert doc["result"]["bipartite"]["bipartite"] is True
    assert doc["config"]["graph"] == "builtin:cycle:6"


def test_analyze_source(capsys, validator):
    code, doc, _ = run_json(capsys, validator,
                            ["analyze", "--builtin", "grid_Z2", "--nmax", "3"])
    assert code == 0
    assert doc["result"]["ball_sizes"] == [1, 5, 13, 25]
    assert doc["result"]["dense_cycle_radius"] == 2


def test_check_petersen_passes(capsys, validator):
    code, doc, _ = run_json(capsys, validator,
                            ["check", "--builtin", "petersen",
                             "--nmax", "20"])
    assert code == 0
    assert doc["result"]["all_ok"] is True
    names = {c["name"] for c in doc["result"]["checks"]}
    assert {"row_sums_one", "column_sums_one", "reversal_symmetry",
            "weighted_series_equals_walk", "functional_equation"} <= names


def test_limits_butterfly_exact(capsys, validator):
    code, doc, _ = run_json(capsys, validator,
                            ["limits", "--builtin", "butterfly",
                             "--from", "a", "--nmax", "60", "--exact"])
    assert code == 0
    target = doc["result"]["targets"]["x"]
    assert target["cesaro_target"] == "1/3"
    assert doc["result"]["period"] == 3
    tails = doc["result"]["targets"]["a"]["residue_tails"]
    num, den = tails["0"].split("/")
    assert abs(int(num) / int(den) - 0.25) < 1e-6


def test_spectral_finite_and_source(capsys, validator):
    code, doc, _ = run_json(capsys, validator,
                            ["spectral", "--builtin", "petersen"])
    assert code == 0
    assert doc["result"]["nbrw"]["value"] == "1"
    assert doc["result"]["nbrw"]["method"] == "exact_eigen"
    assert abs(doc["result"]["qe_operator_norm"] - 1.0) < 1e-9

    code, doc, _ = run_json(capsys, validator,
                            ["spectral", "--builtin", "free_group:2",
                             "--nmax", "40"])
    assert code == 0
    assert doc["result"]["nbrw"]["value"] == "1/3"
    assert "DenseCyclesUnverified" in doc["result"]["warnings"]


def test_cogrowth_csv_exact_cells(capsys):
    code = main(["cogrowth", "--builtin", "complete:4", "--nmax", "6",
                 "--format", "csv", "--check-functional-equation"])
    out = capsys.readouterr().out
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("# command=cogrowth")
    assert "# numeric_mode=float" in lines[1]
    assert "n,coefficient,path_count,sphere_size" in lines[3]
    assert lines[4 + 3].startswith("3,1/2,6,12")
    assert lines[-1].startswith("# functional_equation_max_residual=0")


def test_limits_csv_trajectories(capsys):
    code = main(["limits", "--builtin", "complete:4", "--from", "0",
                 "--nmax", "4", "--format", "csv", "--exact"])
    out = capsys.readouterr().out
    assert code == 0
    lines = [ln for ln in out.strip().splitlines() if not ln.startswith("#")]
    assert lines[0].split(",")[0] == "n"
    assert len(lines) == 1 + 5
    assert lines[1].startswith("0,")


def test_simulate_roundtrip(capsys, validator):
    code, doc, _ = run_json(capsys, validator,
                            ["simulate", "--builtin", "complete:4",
                             "--from", "0", "--nmax", "5",
                             "--trials", "4000", "--seed", "9"])
    assert code == 0
    assert doc["result"]["tv_distance"] < 0.05
    assert doc["config"]["seed"] == 9


def test_amenability_json(capsys, validator):
    code, doc, _ = run_json(capsys, validator,
                            ["amenability", "--builtin", "free_group:2",
                             "--nmax", "60", "--rmax", "6", "--k", "4"])
    assert code == 0
    assert doc["result"]["verdict"] == "inconclusive"
    assert doc["result"]["evidence"] == "nonamenable_like"
    assert "PrerequisiteUnverified" in doc["result"]["warnings"]


def test_reruns_are_byte_identical(capsys, validator):
    argv = ["spectral", "--builtin", "grid_Z2", "--nmax", "60"]
    _, _, first = run_json(capsys, validator, argv)
    _, _, second = run_json(capsys, validator, argv)
    assert first == second


def test_output_flag_writes_file(tmp_path, capsys, validator):
    path = tmp_path / "report.json"
    code = main(["analyze", "--builtin", "complete:4",
                 "--output", str(path)])
    assert code == 0
    assert capsys.readouterr().out == ""
    doc = json.loads(path.read_text())
    assert not list(validator.iter_errors(doc))


def test_stdin_graph(monkeypatch, capsys, validator):
    import io
    text = "edge a b 2\nedge b c\nedge c a\n"
    monkeypatch.setattr(sys, "stdin", io.StringIO(text))
    code, doc, _ = run_json(capsys, validator, ["analyze", "--graph", "-"])
    assert code == 0
    assert doc["result"]["graph"]["vertices"] == 3
    assert doc["config"]["graph"] == "stdin"


@pytest.mark.parametrize("argv", [
    ["analyze"],
    ["analyze", "--builtin", "petersen", "--graph", "x.txt"],
    ["analyze", "--graph", "/definitely/not/here"],
    ["analyze", "--builtin", "nosuchgraph"],
    ["analyze", "--builtin", "petersen", "--format", "csv"],
    ["limits", "--builtin", "petersen", "--from", "zz"],
    ["simulate", "--builtin", "complete:4", "--from", "0", "--trials", "10"],
    ["check", "--builtin", "grid_Z2"],
    ["cogrowth", "--builtin", "complete:4", "--nmax", "-2"],
])
def test_input_errors_exit_2(capsys, argv):
    assert main(argv) == 2
    assert "error:" in capsys.readouterr().err


def test_budget_exhaustion_exits_3(capsys):
    code = main(["limits", "--builtin", "grid_Z2", "--from", "0,0",
                 "--to", "0,0", "--nmax", "80", "--exact"])
    assert code == 3
    assert "budget" in capsys.readouterr().err


def test_check_on_reducible_graph(capsys, validator):
    # no functional equation (degree 2) and no period gate (min degree 2),
    # but the kernel invariants still hold and the run stays green
    code, doc, _ = run_json(capsys, validator,
                            ["check", "--builtin", "cycle:5", "--nmax", "6"])
    assert code == 0
    assert doc["result"]["all_ok"] is True


def test_failed_check_exits_1(monkeypatch, capsys):
    import nbrw.cli as cli
    monkeypatch.setitem(
        cli._DISPATCH, "check",
        lambda g, args, nmax: {"checks": [{"name": "forced", "ok": False,
                                           "detail": ""}], "all_ok": False})
    assert main(["check", "--builtin", "complete:4"]) == 1


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "nbrw.cli", "analyze",
                           "--builtin", "butterfly"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert doc["result"]["edge_chain"]["period"] == 3
