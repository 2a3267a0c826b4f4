from __future__ import annotations

import json

import pytest
from click.testing import CliRunner

from drhalg import standardize
from drhalg.cli import EXIT_BOUND, EXIT_FAIL, main


@pytest.fixture
def runner():
    return CliRunner()


def test_vars_nnen_json(runner):
    res = runner.invoke(main, ["vars", "--path", "NNEN", "--format", "json"])
    assert res.exit_code == 0
    data = json.loads(res.output)
    assert data["schema_version"] == 1
    assert data["count"] == 20


def test_vars_empty(runner):
    res = runner.invoke(main, ["vars", "--path", "", "--format", "json"])
    data = json.loads(res.output)
    assert data["count"] == 2
    assert [v["polynomial"] for v in data["variables"]] == ["a[1,2]", "a[2,1]"]


def test_vars_l5_count(runner):
    res = runner.invoke(main, ["vars", "--path", "NENEE", "--format", "json"])
    assert json.loads(res.output)["count"] == 27


def test_output_is_deterministic(runner):
    a = runner.invoke(main, ["vars", "--path", "ENNE", "--format", "json"]).output
    b = runner.invoke(main, ["vars", "--path", "ENNE", "--format", "json"]).output
    assert a == b
    a = runner.invoke(main, ["verify", "--path", "NEN", "--format", "json"]).output
    b = runner.invoke(main, ["verify", "--path", "NEN", "--format", "json"]).output
    assert a == b


def test_invalid_path(runner):
    res = runner.invoke(main, ["vars", "--path", "NXE"])
    assert res.exit_code == 2


def test_verify_all_suites_nnen(runner):
    res = runner.invoke(main, ["verify", "--path", "NNEN", "--format", "json"])
    assert res.exit_code == 0, res.output
    data = json.loads(res.output)
    assert data["ok"] and len(data["suites"]) == 7


def test_verify_bound_error(runner, monkeypatch):
    monkeypatch.delenv("DRH_MAX_LEN", raising=False)
    res = runner.invoke(main, ["verify", "--path", "NENENENEN", "--suite", "decomposition"])
    assert res.exit_code == EXIT_BOUND
    res = runner.invoke(main, ["verify", "--path", "NE", "--max-len", "9", "--suite", "decomposition"])
    assert res.exit_code == EXIT_BOUND


def test_corrupted_delta_order_is_reported(runner, monkeypatch):
    real = standardize.quadruple_factor

    def reversed_order(q):
        # relabel Delta_t as Delta_{l+2-t}
        return [len(q.staircase.path) + 2 - t for t in real(q)]

    monkeypatch.setattr(standardize, "quadruple_factor", reversed_order)
    res = runner.invoke(main, ["verify", "--path", "NENE", "--suite", "decomposition", "--format", "json"])
    assert res.exit_code == EXIT_FAIL
    assert json.loads(res.output)["suites"]["decomposition"]["ok"] is False


def test_draw_staircase_nne(runner):
    res = runner.invoke(main, ["draw", "--path", "NNE", "--what", "staircase"])
    rows = [r.split() for r in res.output.strip().splitlines()]
    assert rows[4][1:4] == ["a14", "a24", "a34"]


def test_draw_quiver_e_dot(runner):
    res = runner.invoke(main, ["draw", "--path", "E", "--what", "quiver", "--format", "dot"])
    assert res.output.count("shape=") == 6


def test_draw_array_empty(runner):
    res = runner.invoke(main, ["draw", "--path", "", "--what", "array"])
    assert len(res.output.strip().splitlines()) == 2


def test_draw_wiring_json(runner, tmp_path):
    out = tmp_path / "w.json"
    res = runner.invoke(main, ["draw", "--path", "ENNE", "--what", "wiring", "--format", "json", "--out", str(out)])
    assert res.exit_code == 0
    assert json.loads(out.read_text())["n"] == 4
    res = runner.invoke(main, ["draw", "--path", "ENNE", "--what", "wiring", "--choice", "0,0,0,0"])
    assert res.exit_code == 2
