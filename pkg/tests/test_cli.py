"""CSV ingestion, report rendering and command line behaviour."""

import json

import numpy as np
import pytest

from bestsubset import cli
from bestsubset.errors import (
    ArityMismatchError,
    InternalNumericError,
    NonFiniteValueError,
    ParseError,
    SingularMatrixError,
    UnknownMethodError,
    VerificationFailure,
)


def write_csv(tmp_path, text, name="data.csv"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def planted_csv(tmp_path, seed=3, d=40):
    """Five predictors and one responder built from columns 0 and 2 only."""
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(d, 5))
    y = 2.0 * x[:, 0] - 1.5 * x[:, 2] + 0.05 * rng.normal(size=d)
    header = "a,b,c,e,f,y"
    lines = [header]
    for i in range(d):
        lines.append(",".join(repr(float(v)) for v in (*x[i], y[i])))
    return write_csv(tmp_path, "\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# ingestion
# ---------------------------------------------------------------------------

def test_ingest_with_header(tmp_path):
    path = write_csv(tmp_path, "x1,x2,y\n1,2,3\n4,5,6\n7,8,10\n")
    data, names = cli.ingest_csv(path)
    assert names == ["x1", "x2", "y"]
    assert data.d == 3 and data.p == 3
    assert data.values[2, 2] == 10.0


def test_ingest_without_header(tmp_path):
    path = write_csv(tmp_path, "1,2\n3,4\n5,6\n")
    data, names = cli.ingest_csv(path)
    assert names is None
    assert data.d == 3 and data.p == 2


def test_ingest_quoted_fields(tmp_path):
    path = write_csv(tmp_path, '"col, one",y\n" 1 ",2\n3,4\n')
    data, names = cli.ingest_csv(path)
    assert names == ["col, one", "y"]
    assert data.values[0, 0] == 1.0


def test_ingest_blank_cell_position(tmp_path):
    path = write_csv(tmp_path, "a,b\n1,2\n3,\n5,6\n")
    with pytest.raises(ParseError) as err:
        cli.ingest_csv(path)
    assert err.value.row == 3 and err.value.column == 2


def test_ingest_bad_token_position(tmp_path):
    path = write_csv(tmp_path, "a,b\n1,2\n3,4\nfive,6\n")
    with pytest.raises(ParseError) as err:
        cli.ingest_csv(path)
    assert err.value.row == 4 and err.value.column == 1


def test_ingest_ragged_row(tmp_path):
    path = write_csv(tmp_path, "a,b,c\n1,2,3\n4,5\n")
    with pytest.raises(ArityMismatchError) as err:
        cli.ingest_csv(path)
    assert err.value.row == 3


def test_ingest_non_finite(tmp_path):
    path = write_csv(tmp_path, "a,b\n1,2\n3,inf\n")
    with pytest.raises(NonFiniteValueError) as err:
        cli.ingest_csv(path)
    assert err.value.row == 3 and err.value.column == 2


def test_ingest_nan_in_first_row_is_not_a_header(tmp_path):
    path = write_csv(tmp_path, "nan,2\n3,4\n")
    with pytest.raises(NonFiniteValueError):
        cli.ingest_csv(path)


def test_ingest_too_few_rows(tmp_path):
    path = write_csv(tmp_path, "a,b\n1,2\n")
    with pytest.raises(ParseError):
        cli.ingest_csv(path)
    with pytest.raises(ParseError):
        cli.ingest_csv(write_csv(tmp_path, "", name="empty.csv"))


# ---------------------------------------------------------------------------
# column specs
# ---------------------------------------------------------------------------

def test_column_spec_names_indices_ranges():
    names = ["a", "b", "c", "d", "y"]
    assert cli.parse_column_spec("a,c", names, 5, "t") == [0, 2]
    assert cli.parse_column_spec("0,3", names, 5, "t") == [0, 3]
    assert cli.parse_column_spec("1-3", names, 5, "t") == [1, 2, 3]
    assert cli.parse_column_spec("y,0-1", names, 5, "t") == [4, 0, 1]


def test_column_spec_errors():
    names = ["a", "b", "c"]
    with pytest.raises(ValueError):
        cli.parse_column_spec("zz", names, 3, "t")
    with pytest.raises(ValueError):
        cli.parse_column_spec("a", None, 3, "t")  # names need a header
    with pytest.raises(ValueError):
        cli.parse_column_spec("0,0", names, 3, "t")
    with pytest.raises(ValueError):
        cli.parse_column_spec("5", names, 3, "t")
    with pytest.raises(ValueError):
        cli.parse_column_spec(",", names, 3, "t")


# ---------------------------------------------------------------------------
# select
# ---------------------------------------------------------------------------

def run_cli(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, out


def test_select_json_finds_planted_subset(tmp_path, capsys):
    path = planted_csv(tmp_path)
    code, out = run_cli(capsys, [
        "select", "--input", path, "--predictors", "a,b,c,e,f",
        "--responders", "y", "--k", "2",
    ])
    assert code == 0
    report = json.loads(out)
    assert report["schema_version"] == 1
    assert report["command"] == "select"
    rec = report["records"][0]
    assert rec["subset"] == ["a", "c"]
    assert rec["responder"] == "y"
    assert 0.0 < rec["mse"] < 0.01
    assert rec["r_squared"] > 0.99
    assert rec["beta0"] == pytest.approx(0.0, abs=0.05)
    assert rec["betas"][0] == pytest.approx(2.0, abs=0.05)
    assert rec["betas"][1] == pytest.approx(-1.5, abs=0.05)


def test_select_sweep_reports_every_k(tmp_path, capsys):
    path = planted_csv(tmp_path)
    code, out = run_cli(capsys, [
        "select", "--input", path, "--predictors", "0-4",
        "--responders", "5", "--k", "3", "--sweep",
    ])
    assert code == 0
    report = json.loads(out)
    assert [r["k"] for r in report["records"]] == [1, 2, 3]
    assert report["records"][1]["subset"] == ["a", "c"]
    mses = [r["mse"] for r in report["records"]]
    assert mses[0] >= mses[1] >= mses[2]


def test_select_csv_and_text_formats(tmp_path, capsys):
    path = planted_csv(tmp_path)
    base = ["select", "--input", path, "--predictors", "0-4",
            "--responders", "5", "--k", "2"]
    code, out = run_cli(capsys, base + ["--format", "csv"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("k,responder,subset,")
    assert "a;c" in lines[1]
    code, out = run_cli(capsys, base + ["--format", "text"])
    assert code == 0
    assert "responder y" in out and "[a, c]" in out


def test_select_synthetic_instance(capsys):
    code, out = run_cli(capsys, [
        "select", "--d", "30", "--n", "5", "--m", "2", "--seed", "7", "--k", "2",
    ])
    assert code == 0
    report = json.loads(out)
    assert report["d"] == 30 and report["n"] == 5 and report["m"] == 2
    assert len(report["records"]) == 2
    assert report["records"][0]["subsets_evaluated"] == 10


def strip_wall_time(text):
    return "\n".join(l for l in text.splitlines() if "wall_time_s" not in l)


def test_select_output_deterministic_across_runs_and_threads(tmp_path, capsys):
    path = planted_csv(tmp_path, seed=11)
    base = ["select", "--input", path, "--predictors", "0-4",
            "--responders", "5", "--k", "2"]
    outs = []
    for extra in ([], [], ["--threads", "3"], ["--method", "algorithm1"]):
        code, out = run_cli(capsys, base + extra)
        assert code == 0
        outs.append(out)
    # same invocation twice: byte-identical apart from the wall clock
    assert strip_wall_time(outs[0]) == strip_wall_time(outs[1])
    # more threads: identical records (only the threads field may differ)
    assert json.loads(outs[0])["records"] == json.loads(outs[2])["records"]
    # a different scoring route still lands on the same subset
    a = json.loads(outs[0])
    b = json.loads(outs[3])
    assert a["records"][0]["subset"] == b["records"][0]["subset"]


# ---------------------------------------------------------------------------
# verify / bench / count-ops
# ---------------------------------------------------------------------------

def test_verify_passes_on_clean_instance(tmp_path, capsys):
    path = planted_csv(tmp_path, seed=5)
    code, out = run_cli(capsys, [
        "verify", "--input", path, "--predictors", "0-4",
        "--responders", "5", "--k", "2",
    ])
    assert code == 0
    report = json.loads(out)
    assert report["pass"] is True
    check = report["checks"][0]
    assert check["subsets_agree"] and check["mse_agree"]
    assert set(check["subsets"]) == {"cond-uncorrelation", "algorithm1",
                                     "hat-a", "hat-b"}


def test_verify_failure_exit_code(monkeypatch, capsys):
    def fake(data, names, pred, resp, k, threads, limit):
        return {"schema_version": 1, "command": "verify", "checks": [],
                "pass": False, "k": k, "d": data.d, "n": len(pred),
                "m": len(resp), "methods": list(cli.METHODS)}, False
    monkeypatch.setattr(cli, "run_verify", fake)
    code, out = run_cli(capsys, [
        "verify", "--d", "20", "--n", "4", "--m", "1", "--k", "2",
    ])
    assert code == 10


def test_bench_smoke(capsys):
    code, out = run_cli(capsys, [
        "bench", "--d", "60", "--n", "6", "--k", "2", "--m", "2",
        "--format", "json",
    ])
    assert code == 0
    report = json.loads(out)
    assert report["subsets"] == 15
    assert report["winners_agree"] is True
    assert {t["method"] for t in report["timings"]} == set(cli.METHODS)
    assert all(row["exact_match"] for row in report["counts"])
    assert set(report["speedup_vs_hat_b"]) == set(cli.METHODS)


def test_count_ops_formats(capsys):
    code, out = run_cli(capsys, ["count-ops", "--k", "3", "--format", "csv"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("method,k,d,m,")
    assert len(lines) == 1 + 3 * len(cli.COUNT_METHODS)
    code, out = run_cli(capsys, ["count-ops", "--k", "2", "--m", "2"])
    assert code == 0
    assert "alg2" in out and "hat-b" in out


# ---------------------------------------------------------------------------
# exit codes
# ---------------------------------------------------------------------------

def test_exit_code_missing_file(capsys):
    code = cli.main(["select", "--input", "/nonexistent/x.csv",
                     "--predictors", "0", "--responders", "1", "--k", "1"])
    assert code == 2


def test_exit_code_config_error(tmp_path, capsys):
    # --input without column specs
    path = write_csv(tmp_path, "1,2\n3,4\n5,6\n")
    code = cli.main(["select", "--input", path, "--k", "1"])
    assert code == 2


def test_exit_code_parse(tmp_path, capsys):
    path = write_csv(tmp_path, "a,b\n1,2\nx,4\n")
    code = cli.main(["select", "--input", path, "--predictors", "0",
                     "--responders", "1", "--k", "1"])
    assert code == 3


def test_exit_code_arity(tmp_path, capsys):
    path = write_csv(tmp_path, "a,b\n1,2\n3\n")
    code = cli.main(["select", "--input", path, "--predictors", "0",
                     "--responders", "1", "--k", "1"])
    assert code == 4


def test_exit_code_non_finite(tmp_path, capsys):
    path = write_csv(tmp_path, "a,b\n1,2\n3,nan\n")
    code = cli.main(["select", "--input", path, "--predictors", "0",
                     "--responders", "1", "--k", "1"])
    assert code == 5


def test_exit_code_zero_variance(tmp_path, capsys):
    path = write_csv(tmp_path, "a,b,y\n1,7,2\n2,7,4\n3,7,6\n4,7,9\n")
    code = cli.main(["select", "--input", path, "--predictors", "a,b",
                     "--responders", "y", "--k", "1"])
    assert code == 6


def test_exit_code_invalid_sparsity(capsys):
    code = cli.main(["select", "--d", "20", "--n", "4", "--m", "1", "--k", "5"])
    assert code == 7


def test_exit_code_no_valid_subset(tmp_path, capsys):
    rng = np.random.default_rng(0)
    x = rng.normal(size=12)
    rows = ["a,b,y"] + [
        f"{float(v)!r},{float(v)!r},{float(rng.normal())!r}" for v in x
    ]
    path = write_csv(tmp_path, "\n".join(rows) + "\n")
    code = cli.main(["select", "--input", path, "--predictors", "a,b",
                     "--responders", "y", "--k", "2"])
    assert code == 8


def test_exit_code_limit(capsys):
    code = cli.main(["select", "--d", "20", "--n", "8", "--m", "2",
                     "--k", "3", "--limit", "10"])
    assert code == 13


def test_exit_code_map_covers_remaining_errors():
    assert cli.exit_code_for(SingularMatrixError(0, 0.0)) == 9
    assert cli.exit_code_for(VerificationFailure("x")) == 10
    assert cli.exit_code_for(InternalNumericError("x")) == 11
    assert cli.exit_code_for(UnknownMethodError("x")) == 12
    assert cli.exit_code_for(RuntimeError("x")) == 2
    # subclasses resolve before their parents
    assert cli.exit_code_for(NonFiniteValueError("x")) == 5
    assert cli.exit_code_for(ArityMismatchError("x")) == 4
    assert cli.exit_code_for(ParseError("x")) == 3
