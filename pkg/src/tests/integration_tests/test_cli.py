import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

import gabriel_roiter
from gabriel_roiter.cli import main
from gabriel_roiter.config import get_settings
from gabriel_roiter.fixtures import ZIGZAG_ELEMENTS, ZIGZAG_LABELINGS, ZIGZAG_RELATIONS, a2
from gabriel_roiter.repcat import FieldSpec, enumerate_ind
from gabriel_roiter.schemas import (
    DetectionResult,
    IndPosetExport,
    MainPropertyReport,
    MeasureOutput,
    SuiteReport,
)
from gabriel_roiter.verify import detect_injectives

SRC = Path(gabriel_roiter.__file__).resolve().parents[1]


def _write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload) if not isinstance(payload, str) else payload)
    return str(path)


def _length_payload(values):
    return {
        "poset": {"elements": list(ZIGZAG_ELEMENTS), "relations": [list(r) for r in ZIGZAG_RELATIONS]},
        "values": {x: str(v) for x, v in values.items()},
    }


def _length_file(tmp_path, name, values):
    return _write(tmp_path, name, _length_payload(values))


@pytest.fixture
def zigzag_file(tmp_path):
    return _length_file(tmp_path, "zigzag.json", ZIGZAG_LABELINGS[0])


@pytest.fixture
def a2_file(tmp_path):
    return _write(tmp_path, "a2.json", {"vertices": ["1", "2"], "arrows": [["1", "2"]], "p": 2, "maxLen": 2})


@pytest.fixture
def kronecker_file(tmp_path):
    return _write(
        tmp_path, "kronecker.json", {"vertices": ["1", "2"], "arrows": [["1", "2"], ["1", "2"]], "p": 2, "maxLen": 5}
    )


def test_measure(zigzag_file, capsys):
    assert main(["measure", "--input", zigzag_file]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["order"] == ["d", "e", "a", "f", "c", "b"]
    assert out["values"]["b"] == ["1", "5"]
    assert out["ties"] == []


def test_measure_zero_iterations(zigzag_file, capsys):
    assert main(["measure", "--input", zigzag_file, "-n", "0"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["order"] == ["f", "e", "d", "a", "b", "c"]


def test_measure_dot(zigzag_file, capsys):
    assert main(["measure", "--input", zigzag_file, "--format", "dot"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("digraph hasse {")
    assert '"b" [label="{1, 5}"];' in out


def test_measure_table(zigzag_file, capsys):
    assert main(["measure", "--input", zigzag_file, "-n", "2", "--format", "table"]) == 0
    assert "measure, n=2" in capsys.readouterr().out


def test_iteration_cap(zigzag_file):
    assert main(["measure", "--input", zigzag_file, "-n", "9"]) == 2


def test_equiv(tmp_path, capsys):
    one = _length_file(tmp_path, "one.json", ZIGZAG_LABELINGS[1])
    three = _length_file(tmp_path, "three.json", ZIGZAG_LABELINGS[3])
    assert main(["equiv", "--input", one, "--input2", three]) == 3
    assert json.loads(capsys.readouterr().out) == {"equivalent": False, "witness": ["b", "c"]}
    two = _length_file(tmp_path, "two.json", ZIGZAG_LABELINGS[2])
    four = _length_file(tmp_path, "four.json", ZIGZAG_LABELINGS[4])
    assert main(["equiv", "--input", two, "--input2", four]) == 0
    assert json.loads(capsys.readouterr().out) == {"equivalent": True}


def test_unreadable_inputs(tmp_path):
    assert main(["measure", "--input", str(tmp_path / "missing.json")]) == 1
    assert main(["measure", "--input", _write(tmp_path, "bad.json", "{not json")]) == 1
    assert main(["measure", "--input", _write(tmp_path, "shape.json", {"values": {}})]) == 1


def test_invalid_length_function(tmp_path, capsys):
    values = dict(ZIGZAG_LABELINGS[0], a=1)
    path = _length_file(tmp_path, "invalid.json", values)
    assert main(["measure", "--input", path]) == 2
    report = json.loads(capsys.readouterr().out)
    assert report["violations"][0] == {"axiom": "L1", "witnesses": ["d", "a"], "detail": ""}


def test_cyclic_poset(tmp_path):
    path = _write(
        tmp_path,
        "cycle.json",
        {"poset": {"elements": ["x", "y"], "relations": [["x", "y"], ["y", "x"]]}, "values": {"x": "1", "y": "2"}},
    )
    assert main(["measure", "--input", path]) == 2


def test_quiver_ind(a2_file, capsys):
    assert main(["quiver", "ind", "--input", a2_file]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["elements"] == ["S_2", "S_1", "M[1,2]"]
    assert out["complete"] is True
    assert out["maxLen"] == 2


def test_quiver_ind_dot(a2_file, capsys):
    assert main(["quiver", "ind", "--input", a2_file, "--format", "dot"]) == 0
    assert '"S_2" -> "M[1,2]";' in capsys.readouterr().out


def test_quiver_measure(a2_file, capsys):
    assert main(["quiver", "measure", "--input", a2_file]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["values"]["M[1,2]"] == ["1", "2"]
    assert out["ties"] == [["S_2", "S_1"]]


def test_quiver_detection(a2_file, capsys):
    assert main(["quiver", "detect-injectives", "--input", a2_file]) == 0
    out = json.loads(capsys.readouterr().out)
    assert set(out["detected"]) == {"S_1", "M[1,2]"}
    assert out["exact"] is True
    assert main(["quiver", "detect-simples", "--input", a2_file, "--format", "table"]) == 0


def test_quiver_verify_main(a2_file, capsys):
    assert main(["quiver", "verify-main", "--input", a2_file, "--seed", "4"]) == 0
    reports = json.loads(capsys.readouterr().out)["reports"]
    assert len(reports) == 3
    assert all(r["violations"] == [] for r in reports)


def test_truncated_detection_is_a_budget_failure(tmp_path):
    path = _write(tmp_path, "k.json", {"vertices": ["1", "2"], "arrows": [["1", "2"], ["1", "2"]], "maxLen": 2})
    assert main(["quiver", "detect-injectives", "--input", path]) == 4
    assert main(["quiver", "detect-simples", "--input", path, "--advisory"]) == 0


def test_orbit_budget(tmp_path, monkeypatch):
    monkeypatch.setenv("GR_ORBIT_BUDGET", "4")
    get_settings.cache_clear()
    path = _write(tmp_path, "a3.json", {"vertices": ["1", "2", "3"], "arrows": [["1", "2"], ["3", "2"]], "p": 5})
    assert main(["quiver", "ind", "--input", path, "--max-len", "2"]) == 4


def test_quiver_argument_validation(a2_file, tmp_path):
    assert main(["quiver", "ind", "--input", a2_file, "--field", "4"]) == 2
    assert main(["quiver", "ind", "--input", a2_file, "--max-len", "8"]) == 2
    cyclic = _write(tmp_path, "cyclic.json", {"vertices": ["1", "2"], "arrows": [["1", "2"], ["2", "1"]]})
    assert main(["quiver", "ind", "--input", cyclic]) == 2


def test_check(capsys):
    assert main(["check", "--seed", "5", "--instances", "10"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["failures"] == []
    assert out["instances"] == 10


@pytest.mark.parametrize("bad", ["abc", 1.5, "1/0"])
def test_non_rational_values_are_parse_errors(tmp_path, bad):
    payload = _length_payload(ZIGZAG_LABELINGS[0])
    payload["values"]["a"] = bad
    assert main(["measure", "--input", _write(tmp_path, "bad.json", payload)]) == 1
    quiver = {"vertices": ["1", "2"], "arrows": [["1", "2"]], "simpleLengths": {"1": bad}}
    assert main(["quiver", "ind", "--input", _write(tmp_path, "q.json", quiver)]) == 1


def test_malformed_quiver_is_a_validation_failure(tmp_path):
    path = _write(tmp_path, "q.json", {"vertices": ["1"], "arrows": [["1", "9"]]})
    assert main(["quiver", "ind", "--input", path]) == 2


def test_ind_export_feeds_measure(a2_file, tmp_path, capsys):
    assert main(["quiver", "ind", "--input", a2_file]) == 0
    export = capsys.readouterr().out
    assert IndPosetExport.model_validate_json(export) == enumerate_ind(a2(), FieldSpec(2), 2).export()
    ind_file = _write(tmp_path, "ind.json", export)
    assert main(["quiver", "measure", "--input", a2_file]) == 0
    expected = capsys.readouterr().out
    assert main(["measure", "--input", ind_file]) == 0
    assert capsys.readouterr().out == expected
    assert main(["equiv", "--input", ind_file, "--input2", ind_file]) == 0


def test_reports_read_back_through_their_schemas(a2_file, capsys):
    assert main(["quiver", "verify-main", "--input", a2_file, "--seed", "4"]) == 0
    for report in json.loads(capsys.readouterr().out)["reports"]:
        assert MainPropertyReport.model_validate(report).model_dump(mode="json", by_alias=True) == report
    assert main(["quiver", "detect-injectives", "--input", a2_file]) == 0
    detection = DetectionResult.model_validate(json.loads(capsys.readouterr().out))
    assert detection == detect_injectives(enumerate_ind(a2(), FieldSpec(2), 2))
    assert main(["quiver", "measure", "--input", a2_file]) == 0
    out = json.loads(capsys.readouterr().out)
    assert MeasureOutput.model_validate(out).model_dump(mode="json") == out
    assert main(["check", "--seed", "5", "--instances", "10"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert SuiteReport.model_validate(out).model_dump(mode="json", by_alias=True) == out


@pytest.mark.parametrize(
    "argv",
    [
        ["quiver", "verify-main", "--input", "A2", "--seed", "4"],
        ["quiver", "ind", "--input", "A2", "--format", "dot"],
        ["quiver", "iterate", "--input", "A2", "-n", "2"],
        ["check", "--seed", "5", "--instances", "10"],
    ],
)
def test_output_is_identical_across_processes(a2_file, argv):
    argv = [a2_file if a == "A2" else a for a in argv]
    outputs = []
    for hash_seed in ("0", "1"):
        env = {**os.environ, "PYTHONHASHSEED": hash_seed, "PYTHONPATH": str(SRC)}
        done = subprocess.run(
            [sys.executable, "-m", "gabriel_roiter.cli", *argv],
            capture_output=True,
            env=env,
            check=True,
        )
        outputs.append(done.stdout)
    assert outputs[0] == outputs[1]


@pytest.mark.slow
def test_kronecker_measure_ties_the_simples(kronecker_file, capsys):
    assert main(["quiver", "measure", "--input", kronecker_file]) == 0
    out = json.loads(capsys.readouterr().out)
    assert ["P_1", "Q_1"] in out["ties"]
    assert out["order"].index("P_3") < out["order"].index("Q_2")


@pytest.mark.slow
def test_kronecker_second_iterate(kronecker_file, capsys):
    assert main(["quiver", "iterate", "--input", kronecker_file, "-n", "2"]) == 0
    order = json.loads(capsys.readouterr().out)["order"]
    labels = ["P_1", "R_1(0:1)", "Q_2", "P_2", "R_2(0:1)", "R_2[1]", "Q_3", "P_3"]
    positions = [order.index(label) for label in labels]
    assert positions == sorted(positions)
