import subprocess
import sys

import pytest

import latticeroots.cli as cli
from latticeroots.errors import InvariantViolation
from latticeroots.weights import AppendixVector


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def body(text):
    return [line for line in text.splitlines() if not line.startswith("#")]


def test_roots(capsys):
    code, out, _ = run(capsys, "roots", "--lattice", "e7")
    assert code == 0
    assert len(body(out)) == 126
    assert "# roots: 126" in out


def test_root_type_and_minima(capsys):
    code, out, _ = run(capsys, "root-type", "--d-min", "1", "--d-max", "4")
    assert code == 0
    assert body(out) == ["1\t126", "2\t84", "3\t74", "4\t56,126"]
    code, out, _ = run(capsys, "minima", "--d", "52")
    assert body(out) == ["52\t12\t12"]


def test_root_type_zero_warns(capsys):
    code, out, err = run(capsys, "root-type", "--d", "0")
    assert code == 0 and body(out) == ["0\t240"]
    assert "warning" in err


def test_orbits(capsys):
    code, out, _ = run(capsys, "orbits", "--d", "61", "--m", "14")
    assert code == 0
    row = body(out)[0].split("\t")
    assert row[:3] == ["61", "14", "3"]
    assert len(row[3].split(";")) == 3
    assert "sha256:bfdb34b5ed6be6a1" in out


def test_scan_and_qpq(capsys):
    code, out, _ = run(capsys, "scan", "--d", "52", "--m-min", "2", "--m-max", "12")
    assert code == 0
    assert body(out)[0].split("\t")[:4] == ["52", "12", "18", "2A2"]
    code, out, _ = run(capsys, "qpq", "--p", "7", "--q", "1", "--d-max", "14")
    assert body(out) == [str(d) for d in range(1, 15)]


def test_smallest_d(capsys):
    _, out, _ = run(capsys, "smallest-d", "--m", "14")
    assert body(out) == ["14\t40"]
    _, out, _ = run(capsys, "smallest-d", "--m", "2", "--d-ceiling", "10")
    assert body(out) == ["2\tnone<=10"]


def test_verify_appendix(capsys):
    code, out, _ = run(capsys, "verify-appendix")
    assert code == 0
    assert sum(line.startswith("PASS") for line in out.splitlines()) == 5


def test_verify_appendix_failure_exit_code(capsys, monkeypatch):
    import latticeroots.weights as weights

    bad = AppendixVector("bad", (1, 0, 0, 1, 0, 0, 1, 0), 46, "2A2", ((5, 6),))
    monkeypatch.setattr(weights, "APPENDIX_VECTORS", (bad,))
    code, out, err = run(capsys, "verify-appendix")
    assert code == 3
    assert any(line.startswith("FAIL bad") for line in out.splitlines())


def test_inequality(capsys):
    code, out, _ = run(capsys, "inequality", "--d-min", "1", "--d-max", "150", "--check")
    assert code == 0
    rows = [line.split("\t") for line in body(out)]
    assert len(rows) == 150
    assert rows[0] == ["1", "72", "60", "126", "5796", "504", "yes"]
    assert sum(r[-1] == "no" for r in rows) == 24
    assert "VIOLATION" not in out


def test_repcount_and_bound(capsys):
    _, out, _ = run(capsys, "repcount", "--lattice", "D6", "--d-min", "1", "--d-max", "2")
    assert body(out) == ["1\t60", "2\t252"]
    _, out, _ = run(capsys, "bound", "--d", "52")
    assert body(out) == ["52\t7984925229121\t62382228353"]


def test_random_search(capsys):
    _, a, _ = run(capsys, "random-search", "--d-min", "1", "--d-max", "60",
                  "--m-min", "2", "--m-max", "12", "--trials", "2000", "--seed", "5")
    _, b, _ = run(capsys, "random-search", "--d-min", "1", "--d-max", "60",
                  "--m-min", "2", "--m-max", "12", "--trials", "2000", "--seed", "5")
    assert a == b


def test_usage_errors(capsys):
    assert run(capsys, "bogus")[0] == 1
    assert run(capsys, "root-type")[0] == 1
    assert run(capsys, "root-type", "--d", "3", "--d-min", "1")[0] == 1
    assert run(capsys, "root-type", "--lattice", "F4", "--d", "3")[0] == 1
    assert run(capsys, "orbits", "--lattice", "E7", "--d", "3", "--m", "2")[0] == 1
    assert run(capsys, "bound", "--d", "0")[0] == 1
    assert run(capsys, "root-type", "--d", "2", "--threads", "0")[0] == 1
    assert run(capsys, "root-type", "--lattice", "E6", "--d", "30")[0] == 1  # ceiling
    assert run(capsys)[0] == 1


def test_invariant_violation_exit_code(capsys, monkeypatch):
    def broken(*a, **k):
        raise InvariantViolation("forced")

    monkeypatch.setattr(cli, "root_type", broken)
    code, _, err = run(capsys, "root-type", "--d", "2")
    assert code == 2 and "forced" in err


def test_help_and_version(capsys):
    assert run(capsys, "--version")[0] == 0
    assert run(capsys, "--help")[0] == 0


def test_out_file_and_flags_after_subcommand(capsys, tmp_path):
    path = tmp_path / "rt.tsv"
    code, out, _ = run(capsys, "root-type", "--d", "4", "--out", str(path), "--no-header")
    assert code == 0 and out == ""
    assert path.read_text() == "4\t56,126\n"
    code, out, _ = run(capsys, "--no-header", "--format", "lines", "minima", "--d", "1")
    assert out == "1 126 126\n"


@pytest.mark.parametrize("argv", [
    ["enumerate", "--d", "23"],
    ["root-type", "--d-min", "1", "--d-max", "40"],
    ["scan", "--d-min", "40", "--d-max", "60", "--m-min", "2", "--m-max", "14"],
    ["orbits", "--d-min", "40", "--d-max", "50", "--m", "14"],
])
def test_thread_count_does_not_change_output(capsys, argv):
    outputs = {run(capsys, *argv, "--threads", str(t))[1] for t in (1, 2, 3)}
    assert len(outputs) == 1


def test_env_thread_count(capsys, monkeypatch):
    base = run(capsys, "enumerate", "--d", "17")[1]
    monkeypatch.setenv(cli.THREADS_ENV, "2")
    assert run(capsys, "enumerate", "--d", "17")[1] == base
    monkeypatch.setenv(cli.THREADS_ENV, "many")
    assert run(capsys, "enumerate", "--d", "17")[0] == 1


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "latticeroots", "bound", "--d", "1", "--no-header"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout == "1\t390625\t3052\n"
