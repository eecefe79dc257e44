"""Abstract result store interface."""

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Dict, List, Sequence, Tuple

from croann.domain.models import Split
from croann.domain.value_objects import ProgressRecord, SplitStatistics, SweepPoint, TrialReport


class ResultStore(ABC):
    """Persists experiment outputs in run directories."""

    @abstractmethod
    def create_run(self, dataset: str, base_seed: int) -> Path:
        """
        Create a fresh run directory.

        Args:
            dataset: Dataset name
            base_seed: Seed of trial 0

        Returns:
            Path of the new directory
        """
        pass

    @abstractmethod
    def write_summary(self, run_dir: Path, statistics: Dict[Split, SplitStatistics]) -> Path:
        """Write one row per portion with columns split,mean,std,min,max."""
        pass

    @abstractmethod
    def write_trials(self, run_dir: Path, reports: Sequence[TrialReport]) -> Path:
        """Write one row per trial in trial order."""
        pass

    @abstractmethod
    def write_manifest(self, run_dir: Path, pairs: Sequence[Tuple[str, str]]) -> Path:
        """Write resolved configuration and provenance as dotted key=value lines."""
        pass

    @abstractmethod
    def write_progress(self, run_dir: Path, records: Sequence[ProgressRecord]) -> Path:
        """Write window-check progress records."""
        pass

    @abstractmethod
    def append_sweep(self, run_dir: Path, point: SweepPoint) -> Path:
        """Append one swept value's row, writing the header first if the file is new."""
        pass

    @abstractmethod
    def write_report(self, root: Path, text: str) -> Path:
        """Write a markdown report into a directory."""
        pass

    @abstractmethod
    def find_runs(self, root: Path) -> List[Path]:
        """
        Find run directories holding a summary.

        Args:
            root: A run directory or a directory of run directories

        Returns:
            Matching directories (unordered)
        """
        pass

    @abstractmethod
    def read_summary(self, run_dir: Path) -> Dict[Split, SplitStatistics]:
        """Read per-portion statistics back."""
        pass

    @abstractmethod
    def read_manifest(self, run_dir: Path) -> Dict[str, str]:
        """Read manifest keys; an absent manifest yields an empty mapping."""
        pass
