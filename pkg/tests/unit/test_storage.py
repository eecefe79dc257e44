"""Unit tests for the local result store."""

import csv

import pytest

from croann.domain.exceptions import ResultStoreError
from croann.domain.models import ReactionKind, Split, StopReason
from croann.domain.value_objects import ProgressRecord, SplitStatistics, SweepPoint, TrialReport
from croann.infrastructure.storage.local import LocalResultStore


@pytest.fixture
def store(tmp_path):
    return LocalResultStore(tmp_path / "runs")


def read_rows(path):
    with open(path, newline="", encoding="utf-8") as f:
        return list(csv.reader(f))


def test_create_run_names(store):
    """Test run directory naming and the collision suffix."""
    first = store.create_run("iris", 0)
    second = store.create_run("iris", 0)

    assert first.is_dir() and second.is_dir()
    assert first.name.startswith("iris-") and first.name.endswith("-seed0")
    assert first != second


def test_summary_round_trip(store):
    """Test that summary values read back exactly."""
    run_dir = store.create_run("iris", 0)
    stats = {
        Split.TRAIN: SplitStatistics(mean=2.0, std=0.1 + 0.2, min=0.0, max=5.333333333333333),
        Split.TEST: SplitStatistics(mean=1.3157894736842106, std=1.0, min=0.0, max=7.894736842105263),
    }

    path = store.write_summary(run_dir, stats)

    assert read_rows(path)[0] == ["split", "mean", "std", "min", "max"]
    assert [row[0] for row in read_rows(path)[1:]] == ["train", "test"]
    assert store.read_summary(run_dir) == stats


def test_trials_in_trial_order(store):
    """Test trials.csv columns, ordering and value formatting."""
    run_dir = store.create_run("toy", 3)
    reports = [
        TrialReport(
            trial=t,
            seed=3 + t,
            train_error=0.0,
            validation_error=50.0,
            test_error=12.5,
            fe_used=400,
            stop_reason=StopReason.OVERFITNESS if t else StopReason.FE_LIMIT,
            train_fitness=0.125,
            attempted={kind: 3 for kind in ReactionKind},
            accepted={kind: t for kind in ReactionKind},
        )
        for t in (1, 0)
    ]

    rows = read_rows(store.write_trials(run_dir, reports))

    assert rows[0] == [
        "trial",
        "seed",
        "train_error",
        "validation_error",
        "test_error",
        "fe_used",
        "stop_reason",
        "train_fitness",
        "on_wall_attempted",
        "on_wall_accepted",
        "decomposition_attempted",
        "decomposition_accepted",
        "intermolecular_attempted",
        "intermolecular_accepted",
        "synthesis_attempted",
        "synthesis_accepted",
    ]
    assert rows[1] == ["0", "3", "0.0", "50.0", "12.5", "400", "fe_limit", "0.125"] + ["3", "0"] * 4
    assert rows[2][8:] == ["3", "1"] * 4
    assert rows[2][0] == "1" and rows[2][6] == "overfitness"


def test_progress_and_sweep(store):
    """Test progress.csv and sweep.csv layouts."""
    run_dir = store.create_run("toy", 0)

    progress = store.write_progress(
        run_dir, [ProgressRecord(trial=0, fe_count=100, train_fitness=3.5, val_fitness=4.0)]
    )
    rates = {ReactionKind.ON_WALL: 0.25, ReactionKind.DECOMPOSITION: 0.5, ReactionKind.INTERMOLECULAR: 0.75}
    store.append_sweep(run_dir, SweepPoint(parameter="pop_size", value="10", test_mean=2.5, test_std=0.5))
    sweep = store.append_sweep(
        run_dir,
        SweepPoint(parameter="pop_size", value="20", test_mean=1.0, test_std=0.0, accept_rates=rates),
    )

    assert read_rows(progress) == [["trial", "fe_count", "train_fitness", "val_fitness"], ["0", "100", "3.5", "4.0"]]
    assert read_rows(sweep) == [
        [
            "parameter",
            "value",
            "test_mean",
            "test_std",
            "on_wall_accept_rate",
            "decomposition_accept_rate",
            "intermolecular_accept_rate",
            "synthesis_accept_rate",
        ],
        ["pop_size", "10", "2.5", "0.5"] + ["nan"] * 4,
        ["pop_size", "20", "1.0", "0.0", "0.25", "0.5", "0.75", "nan"],
    ]


def test_manifest_round_trip(store):
    """Test manifest key/value lines."""
    run_dir = store.create_run("toy", 0)

    store.write_manifest(run_dir, [("data.name", "toy"), ("manifest.seeds", "0-49")])

    assert (run_dir / "manifest.txt").read_text(encoding="utf-8") == "data.name = toy\nmanifest.seeds = 0-49\n"
    assert store.read_manifest(run_dir) == {"data.name": "toy", "manifest.seeds": "0-49"}
    assert store.read_manifest(run_dir.parent) == {}


def test_find_runs(store, tmp_path):
    """Test discovery of run directories."""
    stats = {Split.TEST: SplitStatistics(mean=1.0, std=0.0, min=1.0, max=1.0)}
    a = store.create_run("a", 0)
    b = store.create_run("b", 0)
    store.create_run("empty", 0)
    store.write_summary(a, stats)
    store.write_summary(b, stats)

    assert sorted(store.find_runs(store.out_dir)) == sorted([a, b])
    assert store.find_runs(a) == [a]
    assert store.find_runs(tmp_path / "absent") == []


def test_read_summary_missing(store):
    """Test that a missing summary is a store error."""
    with pytest.raises(ResultStoreError):
        store.read_summary(store.out_dir / "nothing")


def test_unwritable_out_dir(tmp_path):
    """Test that a file in place of the output directory is a store error."""
    blocker = tmp_path / "runs"
    blocker.write_text("", encoding="utf-8")

    with pytest.raises(ResultStoreError):
        LocalResultStore(blocker).create_run("toy", 0)
