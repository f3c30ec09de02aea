import json
import subprocess
import sys

import pytest

from orbivertex.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None), out


def test_vertex_compare(capsys):
    code, data, _ = run(capsys, "vertex", "--n", "1", "--order", "4", "--mode", "compare")
    assert code == 0 and data["match"] is True and data["first_mismatch"] is None
    assert data["calibrated_chi"] == [1, 1]


def test_vertex_closed_trivial(capsys):
    code, data, _ = run(capsys, "vertex", "--n", "0", "--order", "0", "--mode", "closed")
    assert code == 0 and data["series"] == [{"exps": [0], "coeff": "1"}]


def test_vertex_chi_override(capsys):
    code, data, _ = run(capsys, "vertex", "--n", "1", "--order", "3", "--mode", "enumerate", "--chi", "+,+")
    assert code == 0 and data["chi"] == [1, 1]
    assert {"exps": [1, 0], "coeff": "(s1 + s2)/((s3))"} in data["series"]


def test_bad_mode_and_chi(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["vertex", "--mode", "guess"])
    assert exc.value.code == 2
    assert main(["vertex", "--n", "1", "--chi", "+"]) == 2


def test_quotient(capsys):
    _, data, _ = run(capsys, "quotient", "2", "--n", "1")
    assert data["core"] == [] and data["quotient"] == [[1], []] and data["multi_regular"]
    _, data, _ = run(capsys, "quotient", "", "--n", "1")
    assert data["core"] == [] and data["quotient"] == [[], []]
    _, data, _ = run(capsys, "quotient", "1", "--n", "1")
    assert data["core"] == [1] and not data["multi_regular"]
    assert main(["quotient", "1,a"]) == 2


def test_qh(capsys):
    _, data, _ = run(capsys, "qh", "--n", "1", "--m", "1", "--divisor", "D1", "--chamber", "orbifold")
    assert len(data["matrix_classical"]) == 2 and len(data["matrix_quantum"][0]) == 2
    _, data, _ = run(capsys, "qh", "--n", "1", "--m", "0")
    assert data["matrix_classical"] == [["0"]] and data["matrix_quantum"] == [["0"]]
    _, data, _ = run(capsys, "qh", "--n", "1", "--m", "2", "--chamber", "resolution", "--divisor", "D1")
    assert "series" not in data and any("q" in x for row in data["matrix_quantum"] for x in row)
    assert main(["qh", "--n", "1", "--divisor", "X3"]) == 2
    assert main(["qh", "--n", "1", "--divisor", "D4"]) == 2


def test_three_point(capsys):
    _, data, _ = run(capsys, "three-point", "--n", "1", "--m", "2", "--divisor", "D1", "--a", "fund",
                     "--b", "fp:2,2")
    assert all(t["exps"] == [0, 0] for t in data["terms"])
    _, data, _ = run(capsys, "three-point", "--n", "1", "--m", "2", "--divisor", "1", "--a", "fp:2,2",
                     "--b", "fp:2,2")
    assert [t["exps"] for t in data["terms"]] == [[0, 0]]
    _, data, _ = run(capsys, "three-point", "--n", "1", "--m", "2", "--divisor", "D1", "--a", "fp:2,2",
                     "--b", "fp:2,2", "--order", "3")
    assert data["terms"] and all(t["effective"] for t in data["terms"])
    assert all("hbar_linear" in t for t in data["terms"] if any(t["exps"]))
    assert main(["three-point", "--n", "1", "--m", "2", "--a", "fp:2"]) == 2


def test_check_suites(capsys):
    code, data, _ = run(capsys, "check", "--suite", "partitions")
    assert code == 0 and data["pass"]
    code, data, _ = run(capsys, "check", "--suite", "all", "--n", "0", "--order", "4")
    assert code == 0 and data["pass"]
    with pytest.raises(SystemExit) as exc:
        main(["check", "--suite", "everything"])
    assert exc.value.code == 2


def test_degree0(capsys):
    _, data, _ = run(capsys, "degree0", "--n", "1", "--k", "2", "--order", "4")
    assert data["series"] == [{"exps": [0, 0], "coeff": "1"}]


def test_output_is_deterministic(capsys, tmp_path):
    target = tmp_path / "a.json"
    first = run(capsys, "vertex", "--n", "1", "--order", "3", "--mode", "enumerate", "--threads", "1")[2]
    second = run(capsys, "vertex", "--n", "1", "--order", "3", "--mode", "enumerate", "--threads", "2")[2]
    assert first == second
    assert main(["vertex", "--n", "1", "--order", "3", "--mode", "closed", "--output", str(target)]) == 0
    assert json.loads(target.read_text())["mode"] == "closed"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "orbivertex", "quotient", "2", "--n", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["quotient"] == [[1], []]
