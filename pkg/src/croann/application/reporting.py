"""Comparison of run summaries against the published CROANN results."""

import logging
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel

from croann.domain.exceptions import ReportError
from croann.domain.models import PUBLISHED_REFERENCE, Split
from croann.domain.value_objects import SplitStatistics
from croann.infrastructure.storage.base import ResultStore

logger = logging.getLogger(__name__)

PUBLISHED_SOURCE = "[published] CROANN"
ARTIFACT_SOURCE = "run"
COLUMNS = ("dataset", "source", "run", "created", "split", "mean", "std", "min", "max")


class RunEntry(BaseModel):
    """One run directory's summary."""

    name: str
    dataset: str
    created_at: str
    statistics: Dict[Split, SplitStatistics]


class ComparisonReport(BaseModel):
    """Runs grouped by dataset, each group followed by its published rows."""

    runs: List[RunEntry]

    def datasets(self) -> List[str]:
        seen: List[str] = []
        for run in self.runs:
            if run.dataset not in seen:
                seen.append(run.dataset)
        return seen

    def rows(self) -> List[Tuple[str, ...]]:
        """Table rows in COLUMNS order, numbers with two decimals."""
        out: List[Tuple[str, ...]] = []
        for dataset in self.datasets():
            for run in (r for r in self.runs if r.dataset == dataset):
                for split in Split:
                    if split in run.statistics:
                        out.append(
                            (dataset, ARTIFACT_SOURCE, run.name, run.created_at, split.value)
                            + _numbers(run.statistics[split])
                        )
            for split, ref in PUBLISHED_REFERENCE.get(dataset, {}).items():
                out.append(
                    (dataset, PUBLISHED_SOURCE, "-", "-", split.value)
                    + (f"{ref.mean:.2f}", f"{ref.std:.2f}", f"{ref.min:.2f}", f"{ref.max:.2f}")
                )
        return out

    def to_markdown(self) -> str:
        lines = [
            "# CROANN error rates (%)",
            "",
            f"Rows tagged `{PUBLISHED_SOURCE}` are the published reference values.",
            "",
            "| " + " | ".join(COLUMNS) + " |",
            "|" + "---|" * len(COLUMNS),
        ]
        lines += ["| " + " | ".join(row) + " |" for row in self.rows()]
        return "\n".join(lines) + "\n"


def _numbers(s: SplitStatistics) -> Tuple[str, str, str, str]:
    return f"{s.mean:.2f}", f"{s.std:.2f}", f"{s.min:.2f}", f"{s.max:.2f}"


class ReportUseCase:
    """Collect run summaries under a directory and write report.md."""

    def __init__(self, store: ResultStore):
        self.store = store

    def execute(self, root: Path, write: bool = True) -> Tuple[ComparisonReport, Optional[Path]]:
        """
        Build the comparison report.

        Args:
            root: A run directory or a directory containing run directories
            write: Write report.md into root

        Returns:
            Report and the written path (None when write is False)

        Raises:
            ReportError: If no summary is found under root
        """
        run_dirs = self.store.find_runs(root)
        if not run_dirs:
            raise ReportError(f"no summary.csv found under {root}")

        entries: List[RunEntry] = []
        for run_dir in run_dirs:
            manifest = self.store.read_manifest(run_dir)
            entries.append(
                RunEntry(
                    name=run_dir.name,
                    dataset=manifest.get("data.name", run_dir.name.split("-", 1)[0]),
                    created_at=manifest.get("manifest.created_at", ""),
                    statistics=self.store.read_summary(run_dir),
                )
            )
        entries.sort(key=lambda e: (e.created_at, e.name))
        logger.info("Reporting %d runs from %s", len(entries), root)

        report = ComparisonReport(runs=entries)
        path = self.store.write_report(root, report.to_markdown()) if write else None
        return report, path
