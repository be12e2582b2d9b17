import csv
import io
import json
import subprocess
import sys

import pytest

from conemom.cli import main, parse_values


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_parse_values():
    assert parse_values("1:3") == [1, 2, 3]
    assert [str(v) for v in parse_values("0:1:1/2")] == ["0", "1/2", "1"]
    assert parse_values("-1,2") == [-1, 2]


def test_profile_command():
    code, out, _ = run("profile", "--m", "1", "--kappa", "4", "--c", "0", "--bc", "cone")
    assert code == 0
    data = json.loads(out)
    assert data["classification"]["verdict"] == "CompleteScalarFlat"
    assert data["classification"]["einstein"] is None
    assert data["profile"]["numerator"] == ["0", "0", "2"]


def test_bad_input_exit_codes():
    code, _, err = run("profile", "--m", "0", "--kappa", "4", "--c", "0")
    assert code == 2 and "m must be" in json.loads(err)["message"]
    code, _, err = run("profile", "--m", "1", "--kappa", "4", "--c", "10")
    assert code == 2 and json.loads(err)["error"] == "NotPositiveNearZero"
    code, _, _ = run("c0", "--m", "1", "--kappa", "1", "--bc", "cone")
    assert code == 2
    code, _, _ = run("sweep", "--m", "1", "--kappa", "2", "--c", "1:0")
    assert code == 2
    code, _, _ = run("nonsense")
    assert code == 2


def test_c0_is_deterministic():
    a = run("c0", "--m", "1", "--kappa", "-1", "--bc", "bundle")
    b = run("c0", "--m", "1", "--kappa", "-1", "--bc", "bundle")
    assert a == b and a[0] == 0
    data = json.loads(a[1])
    assert data["certified"] and data["c0"] == pytest.approx(-0.1389982519138792, abs=1e-12)


def test_sweep_csv_and_json(tmp_path):
    code, out, _ = run("sweep", "--m", "1:2", "--kappa", "2", "--c", "-2:0", "--bc", "bundle")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 6
    assert rows[-1]["verdict"] == "IncompleteAtZeroSection" and rows[-1]["einstein_alpha"] == "0"
    path = tmp_path / "s.json"
    code, _, _ = run("sweep", "--p", "1", "--k", "1:2", "--m", "1", "--c", "einstein",
                     "--bc", "bundle", "--format", "json", "--output", str(path))
    assert code == 0
    data = json.loads(path.read_text())
    assert [r["einstein_alpha"] for r in data["rows"]] == ["0", "-1"]


def test_sweep_workers_keep_order():
    serial = run("sweep", "--m", "1:3", "--kappa", "-1:2", "--c", "-1,0", "--bc", "cone")
    parallel = run("sweep", "--m", "1:3", "--kappa", "-1:2", "--c", "-1,0", "--bc", "cone", "--workers", "2")
    assert serial == parallel


def test_potential_command(tmp_path):
    path = tmp_path / "t.csv"
    code, out, _ = run("potential", "--m", "1", "--kappa", "2", "--c", "0", "--bc", "bundle",
                       "--samples", "30", "--csv", str(path))
    assert code == 0
    summary = json.loads(out)
    assert summary["rows"] == 30 and summary["checks"]["legendre"]
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["tau", "t", "F", "G", "s"] and len(rows) == 31


def test_toric_command(tmp_path):
    path = tmp_path / "d.json"
    path.write_text(json.dumps({"lambda": [[1, 0], [1, 2]], "xi": ["2", "1"]}))
    code, out, _ = run("toric", "check", str(path))
    assert code == 0
    data = json.loads(out)
    assert data["good"] is False and data["goodness"]["violation"]["divisors"] == [1, 2]
    code, _, _ = run("toric", "check", str(tmp_path / "missing.json"))
    assert code == 2


def test_asympt_command(tmp_path):
    path = tmp_path / "a.csv"
    code, out, _ = run("asympt", "--m", "2", "--samples", "11", "--csv", str(path))
    assert code == 0
    assert json.loads(out)["relative_error"] < 1e-2
    assert path.read_text().splitlines()[0] == "r_tilde,f,excess"


def test_verify_command():
    code, out, _ = run("verify", "--grid", "small")
    assert code == 0 and json.loads(out)["passed"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "conemom", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip()
