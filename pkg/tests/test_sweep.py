"""Sweep determinism, ordering, and crash isolation."""

import json

import pytest

from leblab import DomainError
from leblab.sweep import SweepSpec, render, run_sweep


def test_identical_specs_identical_bytes(tmp_path):
    spec = {
        "alphas": [1.0], "rs": [0.5], "betas": [0.0, 0.5], "ns": [2, 4],
        "tasks": ["zeros", "norm"], "format": "csv",
    }
    s1 = SweepSpec.from_json(spec)
    s2 = SweepSpec.from_json(json.loads(json.dumps(spec)))
    _, t1 = run_sweep(s1)
    _, t2 = run_sweep(s2)
    assert t1 == t2
    assert t1.endswith("\n") and "\r" not in t1


def test_single_vs_parallel_same_bytes():
    spec = SweepSpec.from_json({
        "alphas": [1.0, 2.0], "rs": [0.5], "betas": [0.25], "ns": [3],
        "tasks": ["zeros"],
    })
    _, par = run_sweep(spec, max_workers=2)
    _, ser = run_sweep(spec, max_workers=1)
    assert par == ser


def test_lexicographic_order():
    spec = SweepSpec.from_json({
        "alphas": [2.0, 1.0], "rs": [0.5], "betas": [0.0], "ns": [2, 1],
        "tasks": ["zeros"],
    })
    records, _ = run_sweep(spec)
    keys = [(r["alpha"], r["n"]) for r in records]
    assert keys == [(2.0, 2), (2.0, 1), (1.0, 2), (1.0, 1)]  # spec order, not sorted


def test_crash_isolation_records_error():
    # beta = 1 admits no bracket reduction and fails the phase gate at
    # small n: the record carries the error, the sweep completes
    spec = SweepSpec.from_json({
        "alphas": [1.0], "rs": [0.5], "betas": [1.0, 0.0], "ns": [2],
        "tasks": ["zeros"],
    })
    records, _ = run_sweep(spec)
    assert len(records) == 2
    assert records[0]["error"] != ""
    assert records[1]["error"] == "" and records[1]["count"] == 4


def test_empty_axes_header_only():
    spec = SweepSpec.from_json({"alphas": [], "rs": [], "betas": [], "ns": [], "tasks": ["norm"]})
    records, text = run_sweep(spec)
    assert records == []
    assert text == "\n"


def test_validation_rejects_bad_grid():
    with pytest.raises(DomainError):
        SweepSpec.from_json({"alphas": [-1.0], "rs": [0.5], "betas": [0.0], "ns": [2], "tasks": ["norm"]})
    with pytest.raises(DomainError):
        SweepSpec.from_json({"alphas": [1.0], "rs": [0.5], "betas": [0.0], "ns": [2], "tasks": ["nope"]})


def test_gamma_track_fields():
    spec = SweepSpec.from_json({
        "alphas": [1.0], "rs": [0.5], "betas": [0.0], "ns": [4],
        "tasks": ["gamma-track"], "format": "json",
    })
    records, text = run_sweep(spec)
    assert set(records[0]) >= {"alpha", "r", "beta", "n", "task", "gamma_star", "theta", "error"}
    assert json.loads(text)[0]["task"] == "gamma-track"


def test_output_file_written(tmp_path):
    out = tmp_path / "report.csv"
    spec = SweepSpec.from_json({
        "alphas": [1.0], "rs": [0.5], "betas": [0.0], "ns": [2],
        "tasks": ["lebesgue"], "output": str(out),
    })
    _, text = run_sweep(spec)
    assert out.read_text(encoding="utf-8") == text
    assert text.splitlines()[0].split(",")[0] == "alpha"
