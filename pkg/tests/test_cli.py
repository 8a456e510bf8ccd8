import csv
import io
import json
import subprocess
import sys

import pytest

from tslog import ScaleSpec, build, log_table
from tslog.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv, "--format", "json")
    return code, json.loads(text)


def rows(text):
    return list(csv.reader(io.StringIO(text)))


# -- eval -------------------------------------------------------------------------


def test_eval_examples():
    assert run("eval", "--scale", "N", "--window", "1", "10", "--at", "4") == (0, "t,L\n4.0,1.8333333333333333\n")
    code, text = run("eval", "--scale", "qN0", "--q", "2", "--window", "1", "16", "--at", "8")
    assert code == 0 and float(rows(text)[1][1]) == 3.0
    code, text = run("eval", "--scale", "R", "--window", "0.5", "3", "--at", "1")
    assert code == 0 and float(rows(text)[1][1]) == 0.0


def test_eval_point_outside_scale(capsys):
    code, text = run("eval", "--scale", "N", "--window", "1", "10", "--at", "4", "2.5")
    assert code == 1
    assert rows(text) == [["t", "L"], ["4.0", "1.8333333333333333"]]
    assert "2.5" in capsys.readouterr().err


def test_eval_json_schema():
    code, doc = run_json("eval", "--scale", "N", "--window", "1", "10", "--at", "1", "4")
    assert code == 0
    assert set(doc) == {"command", "scale", "results", "pass"}
    assert doc["pass"] is True
    assert doc["command"].startswith("tslog eval")
    assert ScaleSpec.from_dict(doc["scale"]) == ScaleSpec("N", (1, 10))
    assert doc["results"] == [{"t": 1.0, "L": 0.0}, {"t": 4.0, "L": 11 / 6}]


def test_inline_json_and_spec_file(tmp_path):
    spec = ScaleSpec("qN0", (1, 16), q=2).to_json()
    a = run("eval", "--scale", spec, "--at", "8")
    path = tmp_path / "scale.json"
    path.write_text(spec)
    b = run("eval", "--spec", str(path), "--at", "8")
    assert a == b and a[0] == 0


# -- table ------------------------------------------------------------------------


def test_table_geometric():
    code, text = run("table", "--scale", "qN0", "--q", "2", "--window", "1", "8", "--format", "csv")
    assert code == 0
    assert [(float(t), float(v)) for t, v in rows(text)[1:]] == [(1, 0), (2, 1), (4, 2), (8, 3)]


def test_table_harmonic_prefix():
    code, text = run("table", "--scale", "N", "--window", "1", "4")
    assert [(float(t), float(v)) for t, v in rows(text)[1:]] == [(1, 0), (2, 1), (3, 1.5), (4, 11 / 6)]


def test_table_single_point():
    code, text = run("table", "--scale", "custom", "--components", "[[1,1]]")
    assert code == 0 and rows(text) == [["t", "L"], ["1.0", "0.0"]]


def test_table_csv_and_json_reparse_to_library_values():
    spec = ScaleSpec("custom", (0.5, 4), components=((0.5, 1.5), (2, 2), (3, 4)))
    want = log_table(build(spec), grid_n=5)
    argv = ("table", "--scale", spec.to_json(), "--grid", "5")
    _, text = run(*argv)
    assert [(float(t), float(v)) for t, v in rows(text)[1:]] == want
    _, doc = run_json(*argv)
    assert [(r["t"], r["L"]) for r in doc["results"]] == want


def test_output_is_deterministic():
    argv = ("table", "--scale", "R", "--window", "0.2", "3", "--format", "json")
    assert run(*argv) == run(*argv)


# -- verify -----------------------------------------------------------------------


def test_verify_examples():
    code, text = run("verify", "product", "--scale", "N", "--window", "1", "10", "--a", "2", "--b", "3")
    assert code == 0 and "residual=0 " in text and text.rstrip().endswith("PASS")
    code, doc = run_json("verify", "power", "--scale", "qN0", "--q", "2", "--window", "1", "16", "--a", "2", "--n", "3")
    assert code == 0 and doc["results"][0]["residual"] == 0 and doc["pass"]
    code, doc = run_json("verify", "sigma", "--scale", "N", "--window", "1", "10", "--t", "3")
    assert code == 0 and doc["results"][0]["residual"] == 0


def test_verify_sweep():
    code, doc = run_json("verify", "product", "--scale", "N", "--window", "1", "20", "--sweep")
    assert code == 0 and len(doc["results"]) > 20
    assert max(r["residual"] for r in doc["results"]) <= 1e-12
    code, text = run("verify", "quotient", "--scale", "N", "--window", "1", "12", "--sweep")
    assert code == 0 and "0 failed" in text


def test_verify_csv_columns():
    code, text = run("verify", "quotient", "--scale", "N", "--window", "1", "10", "--x", "6", "--y", "2", "--format", "csv")
    header, row = rows(text)
    assert header == ["kind", "x", "y", "lhs", "rhs", "residual", "tol", "pass"]
    assert row[0] == "quotient" and row[-1] == "True"


def test_verify_chain():
    code, doc = run_json("verify", "chain", "--scale", "N", "--window", "1", "20", "--t", "3")
    r = doc["results"][0]
    assert code == 0 and abs(r["lhs"] - 7 / 9) <= 1e-12


def test_exit_codes_for_preconditions(capsys):
    # 3 * 4 is outside the window: a precondition, not a failed identity
    assert run("verify", "product", "--scale", "N", "--window", "1", "10", "--a", "3", "--b", "4")[0] == 2
    assert run("verify", "product", "--scale", "N", "--window", "1", "10", "--a", "3")[0] == 2
    assert run("verify", "sigma", "--scale", "N", "--window", "1", "10", "--t", "10")[0] == 2
    assert run("eval", "--scale", "N", "--at", "3")[0] == 2  # unbounded family without a window
    assert run("eval", "--scale", "nope", "--window", "1", "2", "--at", "1")[0] == 2
    assert run("bogus")[0] == 2
    capsys.readouterr()


def test_tolerance_override_flags_failure(monkeypatch):
    argv = ("verify", "product", "--scale", "R", "--window", "0.5", "8", "--a", "2", "--b", "3", "--quad-tol", "1e-3")
    code, doc = run_json(*argv, "--tol", "1e-300")
    assert code == 1 and doc["pass"] is False
    monkeypatch.setenv("TSLOG_DEFAULT_TOL", "1e-300")
    assert run_json(*argv)[0] == 1
    monkeypatch.setenv("TSLOG_DEFAULT_TOL", "1e-2")
    code, doc = run_json(*argv)
    assert code == 0 and doc["results"][0]["tol"] == 1e-2


# -- convexity --------------------------------------------------------------------


def test_convexity_examples():
    code, text = run("convexity", "--scale", "N", "--window", "1", "20", "--fn", "log", "--method", "definition")
    assert code == 0 and ": concave;" in text
    code, doc = run_json("convexity", "--scale", "N", "--window", "1", "20", "--fn", "square", "--method", "derivative")
    r = doc["results"][0]
    assert code == 0 and r["convex"] and not r["concave"]
    code, doc = run_json("convexity", "--scale", "custom", "--components", "[[1,1],[2,2]]", "--fn", "log", "--expect", "both")
    assert code == 0 and doc["results"][0]["convex"] and doc["results"][0]["concave"]


def test_convexity_expectation_failure():
    code, text = run("convexity", "--scale", "N", "--window", "1", "20", "--fn", "log", "--expect", "convex")
    assert code == 1 and "FAIL" in text
    code, text = run("convexity", "--scale", "N", "--window", "1", "6", "--fn", "sqrt", "--expect", "convex")
    assert code == 1


def test_unknown_function():
    assert run("convexity", "--scale", "N", "--window", "1", "5", "--fn", "nope")[0] == 2


# -- entry points -----------------------------------------------------------------


@pytest.mark.parametrize("entry", [[sys.executable, "-m", "tslog"]])
def test_module_entry_point(entry):
    out = subprocess.run(
        [*entry, "eval", "--scale", "N", "--window", "1", "10", "--at", "4"],
        capture_output=True,
        text=True,
    )
    assert out.returncode == 0 and out.stdout == "t,L\n4.0,1.8333333333333333\n"
    out = subprocess.run([*entry, "eval", "--scale", "N", "--window", "1", "10", "--at", "0.5"], capture_output=True)
    assert out.returncode == 1
