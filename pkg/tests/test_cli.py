"""Command-line pipelines: exit codes, file schemas, and round-trips."""

import json
import os
import pathlib
import subprocess
import sys

import pytest

from auerbach.c0 import spec_from_dict, basis_from_dict
from auerbach.ck import element_from_dict
from auerbach.cli import main

SPEC = {
    "functionals": [
        {"coeffs": ["1", "0", "1/2"]},
        {"coeffs": ["0", "1", "2/3"]},
    ]
}

DEPENDENT = {
    "functionals": [
        {"coeffs": ["1", "1/2"]},
        {"coeffs": ["2", "1"]},
    ]
}


@pytest.fixture
def spec_file(tmp_path):
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(SPEC))
    return path


def test_c0_builds_and_emits_expected_selection(tmp_path, spec_file):
    out = tmp_path / "basis.json"
    code = main(["c0", "--input", str(spec_file), "--out", str(out)])
    assert code == 0
    data = json.loads(out.read_text())
    assert data["selection"]["indices"] == [1, 2]
    assert data["selection"]["det"] == "1"
    assert data["vectors"][0]["correction"] == {"1": "-1/2", "2": "-2/3"}
    # schema closure: the emitted file re-parses under the module readers
    spec = spec_from_dict(SPEC)
    basis_from_dict(data, spec)


def test_c0_verify_round_trip_reports_are_identical(tmp_path, spec_file):
    out = tmp_path / "basis.json"
    r1 = tmp_path / "r1.json"
    r2 = tmp_path / "r2.json"
    assert main([
        "c0", "--input", str(spec_file), "--out", str(out),
        "--verify", "--report", str(r1),
    ]) == 0
    assert main([
        "verify", "--spec", str(spec_file), "--basis", str(out),
        "--report", str(r2),
    ]) == 0
    assert r1.read_bytes() == r2.read_bytes()


def test_c0_two_runs_are_byte_identical(tmp_path, spec_file):
    reports = []
    for name in ("a", "b"):
        out = tmp_path / f"basis_{name}.json"
        report = tmp_path / f"report_{name}.json"
        assert main([
            "c0", "--input", str(spec_file), "--out", str(out),
            "--verify", "--report", str(report),
        ]) == 0
        reports.append(report.read_bytes())
    assert reports[0] == reports[1]


def test_c0_rejects_dependent_functionals(tmp_path):
    path = tmp_path / "dep.json"
    path.write_text(json.dumps(DEPENDENT))
    assert main(["c0", "--input", str(path)]) == 3


def test_c0_rejects_malformed_input(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert main(["c0", "--input", str(path)]) == 2
    path.write_text(json.dumps({"functionals": [{"coeffs": ["1/0"]}]}))
    assert main(["c0", "--input", str(path)]) == 2
    assert main(["c0", "--input", str(tmp_path / "missing.json")]) == 2


def test_c0_fault_injection_exits_one(tmp_path, spec_file):
    report = tmp_path / "report.json"
    code = main([
        "c0", "--input", str(spec_file), "--debug-corrupt",
        "--report", str(report),
    ])
    assert code == 1
    data = json.loads(report.read_text())
    failing = [c for c in data["checks"] if not c["pass"]]
    assert failing and failing[0]["witness"] is not None


def test_ck_enumerates_and_verifies(tmp_path):
    listing = tmp_path / "listing.json"
    report = tmp_path / "report.json"
    code = main([
        "ck", "--alpha", "w^2", "--copies", "1", "--enumerate", "12",
        "--verify", "--trials", "6", "--out", str(listing),
        "--report", str(report),
    ])
    assert code == 0
    data = json.loads(listing.read_text())
    assert data["indices"][0]["index"] == "T0"
    element_from_dict(data["indices"][0]["element"])
    assert json.loads(report.read_text())["totals"]["failed"] == 0


def test_ck_rejects_zero_ordinal():
    assert main(["ck", "--alpha", "0", "--enumerate", "3"]) == 2


def test_ck_rejects_bad_ordinal():
    assert main(["ck", "--alpha", "w+w", "--enumerate", "3"]) == 2


def test_ck_two_copies_verifies(tmp_path):
    report = tmp_path / "report.json"
    code = main([
        "ck", "--alpha", "2", "--copies", "2", "--enumerate", "10",
        "--verify", "--trials", "5", "--out", str(tmp_path / "l.json"),
        "--report", str(report),
    ])
    assert code == 0


def test_eval_constant_functional(tmp_path, capsys):
    path = tmp_path / "one.json"
    path.write_text(json.dumps({"tail": "1", "children": {}}))
    assert main(["eval", "--alpha", "w", "--index", "T0",
                 "--element", str(path)]) == 0
    assert capsys.readouterr().out.strip() == "1"


def test_eval_rejects_omitted_constant_index(tmp_path):
    path = tmp_path / "one.json"
    path.write_text(json.dumps({"tail": "1", "children": {}}))
    assert main(["eval", "--alpha", "2", "--index", "B1.T0",
                 "--element", str(path)]) == 2


def test_expand_prints_coefficients(tmp_path, capsys):
    path = tmp_path / "indicator.json"
    path.write_text(json.dumps(
        {"tail": "0", "children": {"1": {"tail": "1", "children": {}}}}
    ))
    assert main(["expand", "--alpha", "1", "--element", str(path)]) == 0
    printed = json.loads(capsys.readouterr().out)
    assert printed == {"T0": "1/2", "T1": "-1/2"}


def test_expand_rejects_malformed_element(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"tail": "1/0", "children": {}}))
    assert main(["expand", "--alpha", "1", "--element", str(path)]) == 2


def test_console_module_entry_point(tmp_path, spec_file):
    src = pathlib.Path(__file__).resolve().parents[1] / "src"
    env = dict(os.environ)
    env["PYTHONPATH"] = str(src) + os.pathsep + env.get("PYTHONPATH", "")
    result = subprocess.run(
        [sys.executable, "-m", "auerbach", "c0", "--input", str(spec_file)],
        capture_output=True,
        text=True,
        env=env,
    )
    assert result.returncode == 0
