# Copyright (c) 2025 Twistforge Developers
# SPDX-License-Identifier: BSD 3-Clause

from __future__ import annotations

import json

import pytest

from twistforge.cli import EXIT_DISAGREEMENT, EXIT_ERROR, EXIT_OK, main
from twistforge.config import JOBS_ENV_VAR
from twistforge.errors import TableMismatch
from twistforge.twist import TABLE_NAMES


@pytest.fixture(autouse=True)
def _no_jobs_env(monkeypatch):
    monkeypatch.delenv(JOBS_ENV_VAR, raising=False)


def run(capsys, *argv) -> tuple[int, str]:
    code = main(list(argv))
    return code, capsys.readouterr().out


@pytest.fixture
def corpus_file(tmp_path):
    path = tmp_path / "corpus.json"
    box = {"a1": [0, 0], "a2": [0, 0], "a3": [0, 0], "a4": [-1, 1], "a6": [0, 1]}
    path.write_text(json.dumps({"p": 3, "box": box, "dset": [2, 3]}))
    return str(path)


def test_localdata(capsys):
    code, out = run(capsys, "localdata", "--p", "11", "--ainvs", "[0,-1,1,-10,-20]")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert (payload["type"], payload["delta"], payload["f"], payload["c"]) == ("I5", 5, 1, 5)
    assert payload["reduction"] == "split"
    assert len(payload["minimal_model"]) == 5


def test_localdata_as_table(capsys):
    code, out = run(capsys, "localdata", "--p", "11", "--ainvs", "[0,-1,1,-10,-20]", "--format", "table")
    assert code == EXIT_OK
    assert "I5" in out and "Field" in out


def test_strongmin(capsys):
    code, out = run(capsys, "strongmin", "--p", "2", "--ainvs", "[0,1,0,0,2]")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["model"] == [2, 0, 0, 0, 2]
    assert payload["isomorphism"] == [1, 0, 1, 0]
    assert (payload["type"], payload["row"]) == ("II", "2:II")


def test_twist(capsys):
    code, out = run(capsys, "twist", "--p", "2", "--d", "-1", "--ainvs", "[2,0,0,8,0]")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["twisted"]["type"] == "I2*"
    assert (payload["d"], payload["v_d"], payload["path"]) == (7, 0, "fast")


def test_twist_on_the_model_path(capsys):
    code, out = run(capsys, "twist", "--p", "2", "--d", "-1", "--ainvs", "[2,0,0,8,0]", "--path", "model")
    assert code == EXIT_OK
    assert json.loads(out)["path"] == "model"


def test_curve_given_as_object(capsys):
    code, out = run(capsys, "twist", "--ainvs", '{"ainvs": [0, 0, 2, 0, 4], "p": 2, "d": 5}')
    assert code == EXIT_OK
    twisted = json.loads(out)["twisted"]
    assert (twisted["type"], twisted["c"]) == ("IV", 3)


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bogus"],
        ["localdata", "--p", "5"],
        ["localdata", "--p", "5", "--ainvs", "[1,2]"],
        ["localdata", "--p", "5", "--ainvs", "[1,2"],
        ["localdata", "--ainvs", "[0,0,0,1,1]"],
        ["localdata", "--p", "5", "--ainvs", "[0,0,0,0,0]"],
        ["localdata", "--p", "4", "--ainvs", "[0,0,0,1,1]"],
        ["twist", "--p", "5", "--ainvs", "[0,0,0,1,1]"],
        ["twist", "--p", "5", "--d", "0", "--ainvs", "[0,0,0,1,1]"],
        ["verify", "--spec", "missing.json"],
    ],
)
def test_errors_exit_with_one(capsys, argv):
    assert main(argv) == EXIT_ERROR


def test_bad_jobs_env(monkeypatch, corpus_file):
    monkeypatch.setenv(JOBS_ENV_VAR, "zero")
    assert main(["verify", "--spec", corpus_file]) == EXIT_ERROR


def test_verify_writes_json_lines(capsys, corpus_file):
    code, out = run(capsys, "verify", "--spec", corpus_file, "--jobs", "1")
    assert code == EXIT_OK
    records = [json.loads(line) for line in out.splitlines()]
    summary = records[-1]
    assert summary["kind"] == "summary"
    assert summary["total"] == 11
    assert summary["skipped_singular"] == 1
    assert summary["disagreements"] == 0
    assert "elapsed" not in summary


def test_verify_to_file_with_table(capsys, corpus_file, tmp_path):
    out_path = tmp_path / "report.jsonl"
    code, out = run(capsys, "verify", "--spec", corpus_file, "--jobs", "1", "--out", str(out_path), "--format", "table")
    assert code == EXIT_OK
    assert "Differential run at p = 3" in out
    lines = out_path.read_text().splitlines()
    assert json.loads(lines[-1])["kind"] == "summary"


def test_verify_timing(capsys, corpus_file):
    code, out = run(capsys, "verify", "--spec", corpus_file, "--jobs", "1", "--timing")
    assert code == EXIT_OK
    assert "elapsed" in json.loads(out.splitlines()[-1])


def test_verify_reports_disagreements(capsys, monkeypatch, corpus_file):
    def mismatch(*args, **kwargs):
        raise TableMismatch("forced")

    monkeypatch.setattr("twistforge.verify.harness.twist_data_odd", mismatch)
    code, _ = run(capsys, "verify", "--spec", corpus_file, "--jobs", "1", "--no-minimize")
    assert code == EXIT_DISAGREEMENT


def test_tables(capsys):
    code, out = run(capsys, "tables", "q2_isomorphisms")
    assert code == EXIT_OK
    assert out.startswith("# q2_isomorphisms: ")
    code, out = run(capsys, "tables", "q2_polynomials", "--format", "table")
    assert code == EXIT_OK
    assert "q2_polynomials" in out


def test_all_tables(capsys):
    code, out = run(capsys, "tables")
    assert code == EXIT_OK
    for name in TABLE_NAMES:
        assert f"# {name}: " in out


def test_version(capsys):
    with pytest.raises(SystemExit) as info:
        main(["--version"])
    assert info.value.code == 0
    assert capsys.readouterr().out.startswith("twistforge ")
