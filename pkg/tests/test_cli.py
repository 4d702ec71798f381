"""Command-line interface: instance parsing, exit codes, golden-case drift
detection, and the campaign/tightness table commands."""

import copy
import csv
import dataclasses
import json
import sys

import pytest

from semihilbert import cli
from semihilbert.errors import ParseError


def write_instance(tmp_path, name="inst.json", **payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


@pytest.fixture
def worked_pair(tmp_path):
    """Rank-one pair on a diagonal weight; every applicable check holds."""
    return write_instance(tmp_path, a=[[1, 0], [0, 2]], t=[[1, 0], [0, 0]],
                          s=[[0, 0], [1, 0]])


def test_check_single_operator(tmp_path, capsys):
    path = write_instance(tmp_path, a=[[1, 0], [0, 2]], t=[[1, 2], [0, 1]])
    assert cli.main(["check", path]) == 0
    out = capsys.readouterr().out
    assert "HOLDS" in out
    assert "VIOLATED" not in out
    assert "norm_A=" in out
    # pair-only checks must not appear for a single operator
    assert "hh_triangle" not in out


def test_check_pair_runs_diagnostics(worked_pair, capsys):
    assert cli.main(["check", worked_pair]) == 0
    out = capsys.readouterr().out
    assert "hh_triangle" in out
    assert "triangle_equality" in out
    # S# T = 0 here, so the orthogonal-pair diagnostic actually runs
    assert "pythagoras: OK" in out


def test_check_skips_inapplicable_diagnostics(tmp_path, capsys):
    path = write_instance(tmp_path, a=[[1, 0], [0, 1]], t=[[1, 1], [0, 1]],
                          s=[[1, 0], [2, 1]])
    code = cli.main(["check", path])
    out = capsys.readouterr().out
    assert code == 0
    assert "SKIPPED" in out  # pythagoras and positive-product preconditions fail


def test_check_explicit_precondition_is_an_error(tmp_path, capsys):
    path = write_instance(tmp_path, a=[[1, 0], [0, 1]], t=[[1, 1], [0, 1]],
                          s=[[1, 0], [2, 1]])
    assert cli.main(["check", path, "--check", "positive_product_equality"]) == 1
    assert "ERROR" in capsys.readouterr().out


def test_check_json_output(worked_pair, capsys):
    assert cli.main(["check", worked_pair, "--json"]) == 0
    blob = json.loads(capsys.readouterr().out)
    assert blob["status"] == 0
    assert blob["quantities"]["t"]["a_operator_norm"] == pytest.approx(1.0)
    assert blob["quantities"]["s"]["a_operator_norm"] == pytest.approx(2 ** 0.5)
    names = {c["name"] for c in blob["checks"]}
    assert "halfnorm_bounds" in names


def test_check_complex_entries(tmp_path):
    path = write_instance(tmp_path, a=[[1, 0], [0, 1]],
                          t=[[0, [0, -1]], [[0, 1], 0]])
    assert cli.main(["check", path]) == 0


def test_check_unknown_check_name(worked_pair, capsys):
    assert cli.main(["check", worked_pair, "--check", "nope"]) == 1
    assert "unknown check" in capsys.readouterr().err


def test_check_unbounded_operator_reports_error(tmp_path, capsys):
    path = write_instance(tmp_path, a=[[1, 0], [0, 0]], t=[[0, 1], [1, 0]])
    assert cli.main(["check", path]) == 1
    out = capsys.readouterr().out
    assert "norm_A=inf" in out
    assert "a_bounded=False" in out
    assert "ERROR" in out


def test_check_malformed_instance(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert cli.main(["check", str(path)]) == 1
    assert "error:" in capsys.readouterr().err


def test_check_rejects_indefinite_weight(tmp_path, capsys):
    path = write_instance(tmp_path, a=[[1, 0], [0, -1]], t=[[1, 0], [0, 1]])
    assert cli.main(["check", path]) == 1


def test_check_violation_sets_exit_code(worked_pair, capsys, monkeypatch):
    real_fn, arity = cli.CHAIN_CHECKS["halfnorm_bounds"]

    def broken(space, t, check_tol):
        return dataclasses.replace(real_fn(space, t, check_tol=check_tol), holds=False)

    monkeypatch.setitem(cli.CHAIN_CHECKS, "halfnorm_bounds", (broken, arity))
    assert cli.main(["check", worked_pair]) == 2
    assert "VIOLATED" in capsys.readouterr().out


@pytest.mark.parametrize("bad", [
    42,
    [],
    [[1, 2], [3]],
    [[True, 0], [0, 1]],
    [["x", 0], [0, 1]],
    [[[1, 2, 3], 0], [0, 1]],
])
def test_decode_matrix_rejects_malformed(bad):
    with pytest.raises(ParseError):
        cli.decode_matrix(bad)


def test_paper_examples_all_pass(capsys):
    assert cli.main(["paper-examples"]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == len(cli.GOLDEN_CASES)
    assert "FAIL" not in out


def test_paper_examples_only_filter(capsys):
    assert cli.main(["paper-examples", "--only", "triangle"]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 1
    assert cli.main(["paper-examples", "--only", "zzz"]) == 1
    assert "no example id" in capsys.readouterr().err


def test_paper_examples_detect_drift(capsys, monkeypatch):
    tampered = copy.deepcopy(list(cli.GOLDEN_CASES))
    key = next(iter(tampered[0]["expected"]))
    tampered[0]["expected"][key] = 999.0
    monkeypatch.setattr(cli, "GOLDEN_CASES", tuple(tampered))
    assert cli.main(["paper-examples"]) == 2
    out = capsys.readouterr().out
    assert "FAIL" in out
    assert "999" in out


def test_fuzz_writes_deterministic_report(tmp_path, capsys):
    out_a = tmp_path / "a.json"
    out_b = tmp_path / "b.json"
    argv = ["fuzz", "--seed", "1", "--dims", "2,3", "--trials", "2",
            "--checks", "halfnorm_bounds,power_inequality", "--no-timing"]
    assert cli.main(argv + ["--out", str(out_a)]) == 0
    assert cli.main(argv + ["--out", str(out_b)]) == 0
    assert out_a.read_bytes() == out_b.read_bytes()
    blob = json.loads(out_a.read_text())
    assert blob["total_violations"] == 0
    assert "elapsed_seconds" not in blob
    assert blob["config"]["seed"] == 1
    assert "total violations: 0" in capsys.readouterr().out


def test_fuzz_unknown_check(capsys):
    assert cli.main(["fuzz", "--checks", "nope", "--trials", "1"]) == 1
    assert "unknown check" in capsys.readouterr().err


def test_fuzz_bad_dims(capsys):
    assert cli.main(["fuzz", "--dims", "2,x", "--trials", "1"]) == 1
    assert "error:" in capsys.readouterr().err


def test_tightness_chain_csv(tmp_path):
    out = tmp_path / "t.csv"
    argv = ["tightness", "--check", "halfnorm_bounds", "--seed", "0",
            "--dims", "2,3", "--trials", "3", "--csv", str(out)]
    assert cli.main(argv) == 0
    with open(out, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0][:5] == ["trial", "dim", "rank", "ok", "min_slack"]
    assert len(rows) == 4
    assert all(row[3] == "1" for row in rows[1:])
    assert float(rows[1][4]) >= 0.0


def test_tightness_diagnostic_to_stdout(capsys):
    argv = ["tightness", "--check", "triangle_equality", "--seed", "0",
            "--dims", "2", "--trials", "2", "--csv", "-"]
    assert cli.main(argv) == 0
    rows = list(csv.reader(capsys.readouterr().out.splitlines()))
    assert rows[0] == ["trial", "dim", "rank", "ok", "eq_slack", "lhs", "rhs", "gap"]
    assert len(rows) == 3


def test_tightness_unknown_check(capsys):
    assert cli.main(["tightness", "--check", "nope", "--trials", "1"]) == 1


def test_entry_exits_with_status(monkeypatch):
    monkeypatch.setattr(sys, "argv",
                        ["semihilbert", "paper-examples", "--only", "triangle"])
    with pytest.raises(SystemExit) as exc:
        cli.entry()
    assert exc.value.code == 0
