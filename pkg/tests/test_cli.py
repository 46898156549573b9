import csv
import io
import json
import subprocess
import sys

import pytest

from largest_singleton.cli import main
from largest_singleton.singleton import PUBLISHED_TABLES


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_value_example(capsys):
    assert run(capsys, "value", "--family", "permutation", "--n", "6", "--k", "2") == (0, "362\n", "")


@pytest.mark.parametrize("method", ["recurrence", "explicit", "umbral", "oracle"])
def test_value_methods_agree(capsys, method):
    code, out, _ = run(capsys, "value", "--family", "symbolic", "--n", "4", "--k", "1",
                       "--method", method)
    assert code == 0
    assert out == run(capsys, "value", "--n", "4", "--k", "1")[1]


def test_tables_csv_forest(capsys):
    code, out, _ = run(capsys, "tables", "--family", "forest", "--nmax", "6", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["n/k"] + [str(k) for k in range(7)]
    for n, want in enumerate(PUBLISHED_TABLES["forest"]):
        assert rows[n + 1][0] == str(n)
        assert [int(v) for v in rows[n + 1][1:n + 2]] == want
        assert all(v == "" for v in rows[n + 1][n + 2:])


def test_tables_json(capsys):
    code, out, _ = run(capsys, "tables", "--family", "involution", "--nmax", "8", "--format", "json")
    assert code == 0
    assert json.loads(out)["rows"] == PUBLISHED_TABLES["involution"]


def test_tables_to_file(capsys, tmp_path):
    target = tmp_path / "perm.csv"
    code, out, _ = run(capsys, "tables", "--family", "permutation", "--nmax", "6", "--out", str(target))
    assert code == 0
    assert "265" in target.read_text()


def test_suite_minimal(capsys):
    code, out, err = run(capsys, "suite", "--nmax", "0", "--mmax", "0", "--kmax", "0")
    assert code == 0
    reports = json.loads(out)
    assert reports and all(r["status"] == "pass" for r in reports)
    assert "0 failures" in err


def test_suite_text_and_ids(capsys):
    code, out, _ = run(capsys, "suite", "--nmax", "2", "--id", "3.4", "--format", "text")
    assert code == 0
    assert len(out.strip().splitlines()) == 3


def test_suite_deterministic(capsys):
    args = ["suite", "--nmax", "2", "--mmax", "2", "--kmax", "1"]
    first = run(capsys, *args, "--workers", "1")[1]
    second = run(capsys, *args, "--workers", "3")[1]
    assert first == second
    assert "elapsed" not in first
    assert "elapsed" in run(capsys, *args, "--timings")[1]


def test_check(capsys):
    code, out, _ = run(capsys, "check", "--id", "3.4", "--n", "1")
    assert code == 0 and json.loads(out)["status"] == "pass"


def test_bell_and_enumerate(capsys):
    assert run(capsys, "bell", "--n", "4", "--r", "2")[1] == "4*t1*t3 + 3*t2^2\n"
    assert run(capsys, "bell", "--n", "3", "--no-singletons")[1] == "t3\n"
    assert run(capsys, "bell", "--n", "6", "--family", "permutation")[1] == "720\n"
    code, out, _ = run(capsys, "enumerate", "--n", "3")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 5
    assert "{1} {2} {3}\tt1^3" in lines


@pytest.mark.parametrize("which", ["lemma21", "permutation", "involution", "forest", "tree", "fibonacci"])
def test_egf_check(capsys, which):
    code, out, _ = run(capsys, "egf-check", "--which", which, "--order", "6")
    assert code == 0 and json.loads(out)["passed"] is True


def test_custom_family(capsys):
    assert run(capsys, "value", "--family", "custom:1,1,1,1", "--n", "4", "--k", "4")[1] == "15\n"


@pytest.mark.parametrize("argv", [
    ["value", "--n", "2", "--k", "3"],
    ["check", "--id", "9.9"],
    ["value", "--family", "custom:1", "--n", "3", "--k", "0"],
    ["--budget", "2", "value", "--n", "4", "--k", "0"],
    ["--cap", "5", "value", "--n", "6", "--k", "0", "--method", "oracle"],
    ["value", "--family", "unknown", "--n", "1", "--k", "0"],
])
def test_usage_errors_exit_2(capsys, monkeypatch, argv):
    monkeypatch.setenv("PW_ORACLE_CAP", "12")
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and "usage" in err


def test_unknown_subcommand(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "largest_singleton", "value", "--family", "forest",
                           "--n", "6", "--k", "6"], capture_output=True, text=True, check=True)
    assert proc.stdout == "16807\n"
