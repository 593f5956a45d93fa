import json
import subprocess
import sys

import pytest

from tetralattice.harness.cli import main


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


def test_compute_vev(capsys):
    rc, out, _ = run(capsys, "compute", "vev", "--word", "X(n=3,i=2,z=z1) X(n=3,i=1,z=z2)")
    assert rc == 0
    assert json.loads(out)["value"] == "z1^2*z2"


def test_compute_trace_reports_stabilization(capsys):
    word = " ".join(f"X(n=3,i={i},z=1)" for i in (3, 0, 0, 2, 1))
    rc, out, _ = run(capsys, "compute", "trace", "--word", word)
    got = json.loads(out)
    assert rc == 0 and got["value"] == "6" and got["stabilized_at"] >= 1


def test_compute_wtrace(capsys):
    rc, out, _ = run(capsys, "compute", "wtrace", "--word", "X(n=2,i=1,z=z)", "--rank", "2", "--cap", "2")
    assert rc == 0
    assert "t11" in json.loads(out)["value"]


def test_compute_schur_schubert_kostka(capsys):
    rc, out, _ = run(capsys, "compute", "schur", "--shape", "2,1", "--vars", "2")
    assert rc == 0 and json.loads(out)["value"] in ("z1^2*z2 + z1*z2^2", "z1*z2^2 + z1^2*z2")
    rc, out, _ = run(capsys, "compute", "schubert", "--perm", "2,3,1", "--modified")
    assert rc == 0 and json.loads(out)["value"] == "z1*z2^2 + z2^3"
    rc, out, _ = run(capsys, "compute", "kostka", "--shape", "2,1", "--content", "1,1,1")
    assert rc == 0 and json.loads(out)["value"] == 2


@pytest.mark.parametrize("method", ["kernel", "trace", "closed"])
def test_tasep_single_config(capsys, method):
    rc, out, _ = run(capsys, "tasep", "--species", "3", "--sites", "5", "--sector", "2,1,1,1",
                     "--config", "30021", "--method", method)
    assert rc == 0
    assert json.loads(out) == {"config": "30021", "value": "6", "method": method}


def test_tasep_csv(capsys, tmp_path):
    path = tmp_path / "vec.csv"
    rc, out, _ = run(capsys, "tasep", "--species", "2", "--sites", "3", "--sector", "1,1,1", "--csv", str(path))
    assert rc == 0
    assert len(json.loads(out)) == 6
    assert path.read_text().startswith("config,value")


def test_verify_writes_json(capsys, tmp_path):
    path = tmp_path / "report.json"
    rc, out, _ = run(capsys, "verify", "--suite", "tasep_example", "--json", str(path))
    assert rc == 0
    assert "pass" in out
    report = json.loads(path.read_text())
    assert report["ok"] and report["entries"][0]["name"] == "tasep_example"


def test_list(capsys):
    rc, out, _ = run(capsys, "list")
    assert rc == 0 and "conj_commute" in out


@pytest.mark.parametrize("argv", [
    ["verify", "--suite", "nonexistent"],
    ["compute", "vev", "--word", "X(n=3,i=2"],
    ["compute", "kostka", "--shape", "2,x", "--content", "1"],
    ["tasep", "--species", "3", "--sites", "4", "--sector", "2,1,1,1"],
    ["tasep", "--species", "3", "--sites", "5", "--sector", "2,1,1,1", "--method", "closed"],
    ["tasep", "--species", "1", "--sites", "0", "--sector", "1,-1"],
])
def test_usage_errors_exit_2(capsys, argv):
    rc, _, err = run(capsys, *argv)
    assert rc == 2
    assert err.startswith("tetralattice")


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["compute", "schur", "--shape", "2,1"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "tetralattice", "compute", "kostka", "--shape", "2,1",
                           "--content", "1,1,1"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["value"] == 2
