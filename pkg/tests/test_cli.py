"""CLI surface: flags, outputs, exit codes."""

from __future__ import annotations

import json

import pytest

from posr import io as pio
from posr.catalog import cyclic_posr_sets, fixed_digraph
from posr.cli import run
from posr.groups import group_from_token


@pytest.fixture
def fig19_file(tmp_path):
    path = tmp_path / "fig1_9.edges"
    path.write_text(pio.to_edgelist(fixed_digraph("fig1_9")))
    return path


@pytest.fixture
def z7_sets_file(tmp_path):
    g = group_from_token("cyclic:7")
    path = tmp_path / "z7.json"
    path.write_text(pio.connection_sets_to_json(cyclic_posr_sets(7, 2), g))
    return path


def test_classify_output(capsys):
    assert run(["classify", "--group", "cyclic:6", "--m", "2", "--kind", "posr"]) == 0
    assert capsys.readouterr().out.strip() == "No — Theorem 1.1(i)"


def test_aut_fig19(capsys, fig19_file):
    assert run(["aut", "--input", str(fig19_file)]) == 0
    assert "order 1" in capsys.readouterr().out


def test_aut_json(capsys, fig19_file):
    assert run(["aut", "--input", str(fig19_file), "--output", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["order"] == 1 and payload["generators"] == []


def test_build_edgelist(capsys, z7_sets_file):
    assert run(["build", "--group", "cyclic:7", "--m", "2",
                "--sets", str(z7_sets_file)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("n 14\n")
    assert len(out.strip().splitlines()) == 1 + 42  # header + 3*14 arcs


def test_build_m_mismatch(capsys, z7_sets_file):
    assert run(["build", "--group", "cyclic:7", "--m", "3",
                "--sets", str(z7_sets_file)]) == 2


def test_search_exhausted(capsys):
    assert run(["search", "--group", "cyclic:5", "--m", "2", "--kind", "posr"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["status"] == "ExhaustedNone"
    assert payload["candidates_examined"] == 100


def test_search_aborted_exit_code(capsys):
    assert run(["search", "--group", "cyclic:6", "--m", "2",
                "--time-budget", "0"]) == 3
    assert json.loads(capsys.readouterr().out)["status"] == "Aborted"


def test_search_antisym(capsys):
    assert run(["search", "--antisym", "--m", "5", "--oriented"]) == 0
    assert json.loads(capsys.readouterr().out)["status"] == "ExhaustedNone"


def test_search_json_deterministic(capsys):
    run(["search", "--group", "cyclic:5", "--m", "2"])
    first = capsys.readouterr().out
    run(["search", "--group", "cyclic:5", "--m", "2"])
    second = capsys.readouterr().out
    a, b = json.loads(first), json.loads(second)
    a.pop("elapsed_s"), b.pop("elapsed_s")
    assert a == b


def test_usage_errors():
    assert run(["frobnicate"]) == 2
    assert run(["classify", "--group", "cyclic:6"]) == 2  # missing --m
    assert run(["search", "--m", "2"]) == 2  # no group, no --antisym
    assert run(["aut", "--input", "/nonexistent/file"]) == 2


def test_verify_reports_known_failure(capsys):
    # the default-tier registry contains exactly one entry refuted by search
    code = run(["verify", "--tier", "default", "--output", "json"])
    payload = json.loads(capsys.readouterr().out)
    assert code == 1
    assert payload["counts"]["Fail"] == 1
    failing = [r["name"] for r in payload["results"] if r["status"] == "Fail"]
    assert failing == ["trivial-m6-pdr-none"]
