"""Exit codes, JSON schemas, and CSV behavior of the command-line surface."""

import csv
import json

import pytest

from polyctrl.cli import main


def write_json(path, payload):
    path.write_text(json.dumps(payload))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    payload = json.loads(captured.out) if captured.out.strip() else None
    return code, payload, captured.err


DIVERGENCE = {"ring": {"vars": ["x1", "x2", "x3"]}, "rows": [["x1", "x2", "x3"]]}


def test_analyze_controllable(tmp_path, capsys):
    path = write_json(tmp_path / "m.json", DIVERGENCE)
    code, payload, err = run(capsys, "analyze", path)
    assert code == 0
    assert payload["status"] == "Controllable"
    assert payload["codim"] == 3
    assert payload["minor_count"] == 3
    assert "Controllable" in err


def test_analyze_uncontrollable(tmp_path, capsys):
    path = write_json(tmp_path / "m.json", {"ring": {"vars": ["x1"]}, "rows": [["x1"]]})
    code, payload, _ = run(capsys, "analyze", path)
    assert code == 1
    assert payload == {
        "status": "Uncontrollable",
        "codim": 1,
        "reason": "codim_lt_2",
        "minor_count": 1,
        "groebner_size": 1,
        "wall_ms": payload["wall_ms"],
    }


def test_analyze_indeterminate(tmp_path, capsys):
    curl = {
        "ring": {"vars": ["x1", "x2", "x3"]},
        "rows": [["0", "-x3", "x2"], ["x3", "0", "-x1"], ["-x2", "x1", "0"]],
    }
    code, payload, _ = run(capsys, "analyze", write_json(tmp_path / "m.json", curl))
    assert code == 2
    assert payload["status"] == "Indeterminate"
    assert payload["codim"] is None


def test_analyze_parse_error(tmp_path, capsys):
    path = write_json(tmp_path / "m.json", {"ring": {"vars": ["x"]}, "rows": [["2x"]]})
    code, _, err = run(capsys, "analyze", path)
    assert code == 4
    assert "parse error" in err


def test_analyze_missing_file(capsys):
    code, _, err = run(capsys, "analyze", "/nonexistent/matrix.json")
    assert code == 3
    assert "io error" in err


def test_analyze_schema_error(tmp_path, capsys):
    path = write_json(tmp_path / "m.json", {"ring": {"vars": ["x"]}})
    code, _, err = run(capsys, "analyze", path)
    assert code == 5
    assert "rows" in err


def test_analyze_invalid_json(tmp_path, capsys):
    path = tmp_path / "m.json"
    path.write_text("{not json")
    code, _, err = run(capsys, "analyze", str(path))
    assert code == 4


def test_usage_error(capsys):
    assert main(["no-such-command"]) == 6
    capsys.readouterr()


def test_gb_and_dim(tmp_path, capsys):
    ideal = {"vars": ["x1", "x2", "x3"], "gens": ["x1", "x2"]}
    path = write_json(tmp_path / "i.json", ideal)
    code, payload, _ = run(capsys, "gb", path)
    assert code == 0
    assert payload == {"order": "grevlex", "size": 2, "basis": ["x1", "x2"]}

    code, payload, _ = run(capsys, "dim", path)
    assert code == 0
    assert payload == {"dim": 1, "codim": 2, "witness": ["x3"]}


def test_dim_empty_variety_reports_inf(tmp_path, capsys):
    path = write_json(tmp_path / "i.json", {"vars": ["x"], "gens": ["x", "x + 1"]})
    code, payload, _ = run(capsys, "dim", path)
    assert code == 0
    assert payload == {"dim": -1, "codim": "inf", "witness": None}


def test_minors_command(tmp_path, capsys):
    path = write_json(tmp_path / "m.json", DIVERGENCE)
    code, payload, _ = run(capsys, "minors", path, "--size", "1")
    assert code == 0
    assert payload == {"size": 1, "count": 3, "minors": ["x1", "x2", "x3"]}
    code, _, _ = run(capsys, "minors", path, "--size", "2")
    assert code == 5  # size out of range


def test_oracle_command(capsys):
    code, payload, _ = run(capsys, "oracle", "--X", "[[0,1],[0,0]]", "--U", "[[0],[1]]")
    assert code == 0
    assert payload == {
        "agree": True,
        "controllable": True,
        "status": "Controllable",
        "codim": "inf",
    }
    code, payload, _ = run(capsys, "oracle", "--X", "[[1,0],[0,1]]", "--U", "[[1],[1]]")
    assert code == 0
    assert payload["agree"] is True
    assert payload["controllable"] is False


def test_oracle_rejects_floats(capsys):
    code, _, err = run(capsys, "oracle", "--X", "[[0.5]]", "--U", "[[1]]")
    assert code == 5


def test_experiment_command(tmp_path, capsys):
    out = tmp_path / "runs.csv"
    argv = [
        "experiment",
        "--l", "1", "--k", "2", "--n", "2", "--d", "1",
        "--trials", "10", "--seed", "42", "--coeff-bound", "3",
        "--out", str(out),
    ]
    code, payload, err = run(capsys, *argv)
    assert code == 0
    assert payload["trials"] == 10
    assert sum(payload["counts"].values()) == 10

    code, payload2, _ = run(capsys, *argv)
    assert code == 0
    with open(out) as fh:
        rows = list(csv.reader(fh))
    assert len(rows) == 3  # header + two runs
    a, b = rows[1], rows[2]
    a[-2] = b[-2] = "0"
    assert a == b


def test_experiment_guard_violation(capsys):
    code, _, err = run(
        capsys, "experiment", "--l", "3", "--k", "2", "--n", "2", "--d", "1",
        "--trials", "5", "--seed", "1",
    )
    assert code == 5
    assert "l <= k" in err


def test_ci_experiment_command(tmp_path, capsys):
    out = tmp_path / "ci.csv"
    code, payload, _ = run(
        capsys, "ci-experiment", "--m", "1", "--n", "1", "--d", "1",
        "--trials", "10", "--seed", "3", "--out", str(out),
    )
    assert code == 0
    assert payload["codim_eq_m"] == 10
    with open(out) as fh:
        rows = list(csv.reader(fh))
    assert rows[0][0] == "seed"
    assert len(rows) == 2


def test_patch_command(tmp_path, capsys):
    problem = {
        "system": {"ring": {"vars": ["s"], "laurent": True}, "rows": [["s - 1"]]},
        "problems": [
            {
                "window": [8],
                "region1": {"cells": [[0], [1]], "values": {"0": [0], "1": [0]}},
                "region2": {"cells": [[6], [7]], "values": {"6": [1], "7": [1]}},
            }
        ],
    }
    path = write_json(tmp_path / "p.json", problem)
    code, payload, err = run(capsys, "patch", path)
    assert code == 0
    assert payload["verdict"]["status"] == "Uncontrollable"
    assert payload["problems"][0]["feasible"] is False
    assert payload["consistent"] is True
    assert "patch 0: infeasible" in err


def test_patch_rational_values(tmp_path, capsys):
    problem = {
        "system": {"ring": {"vars": ["s"], "laurent": True}, "rows": [["s - 1"]]},
        "problems": [
            {
                "window": [8],
                "region1": {"cells": [[0]], "values": {"0": ["1/2"]}},
                "region2": {"cells": [[7]], "values": {"7": ["1/2"]}},
            }
        ],
    }
    path = write_json(tmp_path / "p.json", problem)
    code, payload, _ = run(capsys, "patch", path)
    assert code == 0
    assert payload["problems"][0]["feasible"] is True


def test_version_flag(capsys):
    assert main(["--version"]) == 0
    out = capsys.readouterr().out
    assert "polyctrl" in out
