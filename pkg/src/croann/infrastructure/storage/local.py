"""Local filesystem result store."""

import csv
from datetime import datetime, timezone
from pathlib import Path
from typing import Dict, Iterable, List, Sequence, Tuple

from croann.domain.exceptions import ResultStoreError
from croann.domain.models import ReactionKind, Split
from croann.domain.value_objects import ProgressRecord, SplitStatistics, SweepPoint, TrialReport
from .base import ResultStore

SUMMARY_FILE = "summary.csv"
TRIALS_FILE = "trials.csv"
MANIFEST_FILE = "manifest.txt"
PROGRESS_FILE = "progress.csv"
SWEEP_FILE = "sweep.csv"
REPORT_FILE = "report.md"

SUMMARY_COLUMNS = ("split", "mean", "std", "min", "max")
TRIAL_COLUMNS = (
    "trial",
    "seed",
    "train_error",
    "validation_error",
    "test_error",
    "fe_used",
    "stop_reason",
    "train_fitness",
) + tuple(f"{kind.value}_{count}" for kind in ReactionKind for count in ("attempted", "accepted"))
PROGRESS_COLUMNS = ("trial", "fe_count", "train_fitness", "val_fitness")
SWEEP_COLUMNS = ("parameter", "value", "test_mean", "test_std") + tuple(
    f"{kind.value}_accept_rate" for kind in ReactionKind
)


def _fmt(value: object) -> str:
    """Shortest round-trip text for floats, plain text otherwise."""
    if isinstance(value, float):
        return repr(value)
    if hasattr(value, "value"):
        return str(value.value)
    return str(value)


def _trial_row(r: TrialReport) -> Tuple[object, ...]:
    reactions = (
        n for kind in ReactionKind for n in (r.attempted.get(kind, 0), r.accepted.get(kind, 0))
    )
    return (
        r.trial,
        r.seed,
        r.train_error,
        r.validation_error,
        r.test_error,
        r.fe_used,
        r.stop_reason,
        r.train_fitness,
        *reactions,
    )


def _sweep_row(p: SweepPoint) -> Tuple[object, ...]:
    rates = (p.accept_rates.get(kind, float("nan")) for kind in ReactionKind)
    return (p.parameter, p.value, p.test_mean, p.test_std, *rates)


def utc_stamp() -> str:
    return datetime.now(timezone.utc).strftime("%Y%m%dT%H%M%SZ")


class LocalResultStore(ResultStore):
    """Run directories under a local output directory."""

    def __init__(self, out_dir: Path):
        self.out_dir = out_dir

    def create_run(self, dataset: str, base_seed: int) -> Path:
        """Create ``<dataset>-<UTC timestamp>-seed<base_seed>``, suffixed if taken."""
        name = f"{dataset}-{utc_stamp()}-seed{base_seed}"
        try:
            self.out_dir.mkdir(parents=True, exist_ok=True)
            run_dir = self.out_dir / name
            suffix = 1
            while run_dir.exists():
                run_dir = self.out_dir / f"{name}-{suffix}"
                suffix += 1
            run_dir.mkdir()
        except OSError as e:
            raise ResultStoreError(f"Failed to create run directory in {self.out_dir}: {e}")
        return run_dir

    def _write_csv(
        self, path: Path, columns: Sequence[str], rows: Iterable[Sequence[object]]
    ) -> Path:
        try:
            with open(path, "w", newline="", encoding="utf-8") as f:
                writer = csv.writer(f, lineterminator="\n")
                writer.writerow(columns)
                for row in rows:
                    writer.writerow([_fmt(v) for v in row])
        except OSError as e:
            raise ResultStoreError(f"Failed to write {path}: {e}")
        return path

    def write_summary(self, run_dir: Path, statistics: Dict[Split, SplitStatistics]) -> Path:
        rows = [
            (split.value, s.mean, s.std, s.min, s.max)
            for split in Split
            if (s := statistics.get(split)) is not None
        ]
        return self._write_csv(run_dir / SUMMARY_FILE, SUMMARY_COLUMNS, rows)

    def write_trials(self, run_dir: Path, reports: Sequence[TrialReport]) -> Path:
        rows = (_trial_row(r) for r in sorted(reports, key=lambda r: r.trial))
        return self._write_csv(run_dir / TRIALS_FILE, TRIAL_COLUMNS, rows)

    def write_progress(self, run_dir: Path, records: Sequence[ProgressRecord]) -> Path:
        rows = (tuple(getattr(r, column) for column in PROGRESS_COLUMNS) for r in records)
        return self._write_csv(run_dir / PROGRESS_FILE, PROGRESS_COLUMNS, rows)

    def append_sweep(self, run_dir: Path, point: SweepPoint) -> Path:
        path = run_dir / SWEEP_FILE
        try:
            new = not path.exists()
            with open(path, "a", newline="", encoding="utf-8") as f:
                writer = csv.writer(f, lineterminator="\n")
                if new:
                    writer.writerow(SWEEP_COLUMNS)
                writer.writerow([_fmt(v) for v in _sweep_row(point)])
        except OSError as e:
            raise ResultStoreError(f"Failed to write {path}: {e}")
        return path

    def write_manifest(self, run_dir: Path, pairs: Sequence[Tuple[str, str]]) -> Path:
        path = run_dir / MANIFEST_FILE
        try:
            path.write_text("".join(f"{k} = {v}\n" for k, v in pairs), encoding="utf-8")
        except OSError as e:
            raise ResultStoreError(f"Failed to write {path}: {e}")
        return path

    def write_report(self, root: Path, text: str) -> Path:
        path = root / REPORT_FILE
        try:
            path.write_text(text, encoding="utf-8")
        except OSError as e:
            raise ResultStoreError(f"Failed to write {path}: {e}")
        return path

    def find_runs(self, root: Path) -> List[Path]:
        if not root.is_dir():
            return []
        if (root / SUMMARY_FILE).is_file():
            return [root]
        return [p for p in root.iterdir() if (p / SUMMARY_FILE).is_file()]

    def read_summary(self, run_dir: Path) -> Dict[Split, SplitStatistics]:
        path = run_dir / SUMMARY_FILE
        try:
            with open(path, newline="", encoding="utf-8") as f:
                return {
                    Split(row["split"]): SplitStatistics(
                        mean=float(row["mean"]),
                        std=float(row["std"]),
                        min=float(row["min"]),
                        max=float(row["max"]),
                    )
                    for row in csv.DictReader(f)
                }
        except (OSError, KeyError, ValueError) as e:
            raise ResultStoreError(f"Failed to read {path}: {e}")

    def read_manifest(self, run_dir: Path) -> Dict[str, str]:
        path = run_dir / MANIFEST_FILE
        if not path.is_file():
            return {}
        try:
            lines = path.read_text(encoding="utf-8").splitlines()
        except OSError as e:
            raise ResultStoreError(f"Failed to read {path}: {e}")
        values: Dict[str, str] = {}
        for line in lines:
            key, sep, value = line.partition("=")
            if sep:
                values[key.strip()] = value.strip()
        return values
