"""
Tests for the command line surface: exit codes and deterministic reports
"""
import json

import pytest
import sys
from pathlib import Path

# Add src to path so imports work
sys.path.append(str(Path(__file__).parent.parent / 'src'))

from cli_app import main
from config import EXIT_NO_SOLUTION, EXIT_OK, EXIT_SCHEMA_ERROR, EXIT_VERIFICATION_FAILURE
from ueb_engine import pauli_ueb


@pytest.fixture
def report(tmp_path):
    return tmp_path / "report.json"


def test_monomial_check_s3(report):
    assert main(["--emit", str(report), "monomial-check", "--group", "S3", "--rep", "standard"]) == EXIT_OK
    body = json.loads(report.read_text())
    assert body["feasible"] is True
    assert body["seed"] == 7


def test_monomial_check_a5(report):
    assert main(["--emit", str(report), "monomial-check"]) == EXIT_OK
    body = json.loads(report.read_text())
    assert body["feasible"] is False
    assert body["certificate"]["class"] == "(1,2,3,4,5)"


def test_hadamard_exit_codes(report):
    assert main(["--emit", str(report), "hadamard", "3"]) == EXIT_OK
    assert json.loads(report.read_text())["details"]["orbit_type"]
    assert main(["--emit", str(report), "hadamard", "5"]) == EXIT_NO_SOLUTION


def test_verify_corrupted_ueb(tmp_path, report):
    data = pauli_ueb().to_dict()
    data["elements"][3] = data["elements"][2]
    path = tmp_path / "ueb.json"
    path.write_text(json.dumps(data))
    assert main(["--emit", str(report), "verify", "--ueb", str(path)]) == EXIT_VERIFICATION_FAILURE


def test_verify_malformed_json(tmp_path, report):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert main(["--emit", str(report), "verify", "--ueb", str(path)]) == EXIT_SCHEMA_ERROR
    path.write_text(json.dumps({"dim": 2}))
    assert main(["--emit", str(report), "verify", "--ueb", str(path)]) == EXIT_SCHEMA_ERROR


def test_verify_example(report):
    assert main(["--emit", str(report), "verify", "--example", "z3"]) == EXIT_OK
    assert json.loads(report.read_text())["details"]["orbit_type"] == "(3, 1)"


def test_teleport_reports_are_reproducible(tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["--emit", str(first), "teleport", "--states", "3"]) == EXIT_OK
    assert main(["--emit", str(second), "teleport", "--states", "3"]) == EXIT_OK
    assert first.read_bytes() == second.read_bytes()
    assert json.loads(first.read_text())["min_fidelity"] >= 1 - 1e-9


def test_teleport_single_state(report):
    args = ["--emit", str(report), "teleport", "--psi", "1,1j", "--baseline"]
    assert main(args) == EXIT_OK
    details = json.loads(report.read_text())["details"]
    assert details["runs"] == 3
    assert details["min fidelity"] >= 1 - 1e-9


def test_teleport_bad_inputs(report):
    assert main(["--emit", str(report), "teleport", "--g", "nonsense"]) == EXIT_SCHEMA_ERROR
    assert main(["--emit", str(report), "teleport", "--psi", "1,2,3"]) == EXIT_SCHEMA_ERROR


def test_catalog(tmp_path, report):
    assert main(["--emit", str(report), "catalog", "--group", "Z5", "--trials", "50"]) == EXIT_NO_SOLUTION
    table = tmp_path / "a4.csv"
    balls = tmp_path / "a4_ball.csv"
    args = ["--format", "csv", "--emit", str(table), "catalog", "--group", "A4", "--emit-ball-csv", str(balls)]
    assert main(args) == EXIT_OK
    assert len(table.read_text().strip().splitlines()) == 3
    assert balls.exists()


def test_channel_compatible(report):
    assert main(["--emit", str(report), "channel", "--kind", "compatible"]) == EXIT_OK
    body = json.loads(report.read_text())
    assert body["details"]["messages"] == 4
    assert len(body["transcripts"]) == 12


def test_table1_markdown(tmp_path):
    out = tmp_path / "table1.md"
    args = ["--format", "md", "--emit", str(out), "table1", "--samples", "2", "--trials", "20"]
    assert main(args) == EXIT_OK
    text = out.read_text()
    assert "Octahedral (S4)" in text
    assert "Icosahedral (A5)" in text
    assert "D3: 6 case labels, 4 distinct point sets" in text


def test_csv_needs_a_table(report):
    assert main(["--format", "csv", "--emit", str(report), "verify", "--example", "z3"]) == EXIT_SCHEMA_ERROR
