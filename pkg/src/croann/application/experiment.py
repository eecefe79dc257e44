"""Benchmark experiment use case: load data, run trials, persist outputs."""

import logging
from datetime import datetime, timezone
from pathlib import Path
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from croann import __version__
from croann.domain.dataset import Counts, RawDataset, reconcile_counts
from croann.domain.models import NetworkConfig
from croann.domain.value_objects import ProgressRecord
from croann.infrastructure.datasets.loader import file_sha256, parse_csv
from croann.infrastructure.run_config import RunConfig
from croann.infrastructure.storage.base import ResultStore
from .training import TrialCallback, TrialSummary, run_trials

logger = logging.getLogger(__name__)


class PreparedDataset(BaseModel):
    """Parsed dataset with the split counts and network shape it implies."""

    raw: RawDataset
    counts: Counts
    net: NetworkConfig
    checksum: str

    model_config = ConfigDict(arbitrary_types_allowed=True)


def prepare_dataset(config: RunConfig) -> PreparedDataset:
    """
    Parse the configured dataset and resolve split counts.

    Raises:
        DatasetError: If the file is missing or malformed
    """
    path = config.data.path
    raw = parse_csv(path, config.data.schema())
    counts = config.data.counts
    if config.data.shortfall == "train_first":
        counts = reconcile_counts(counts, len(raw))
    return PreparedDataset(
        raw=raw,
        counts=counts,
        net=config.network_config(raw.n_attributes, raw.n_classes),
        checksum=file_sha256(path),
    )


def manifest_pairs(
    config: RunConfig, prepared: PreparedDataset, extra: Optional[List[Tuple[str, str]]] = None
) -> List[Tuple[str, str]]:
    """Resolved configuration followed by provenance keys under ``manifest.``."""
    first = config.run.base_seed
    last = first + config.run.n_trials - 1
    pairs = list(config.to_pairs())
    pairs += [
        ("manifest.created_at", datetime.now(timezone.utc).isoformat(timespec="seconds")),
        ("manifest.version", __version__),
        ("manifest.seeds", f"{first}-{last}"),
        ("manifest.dataset_sha256", prepared.checksum),
        ("manifest.dataset_rows", str(len(prepared.raw))),
        ("manifest.dropped_rows", str(prepared.raw.dropped_rows)),
        ("manifest.split_counts", ",".join(str(c) for c in prepared.counts)),
    ]
    return pairs + (extra or [])


class ExperimentOutcome(BaseModel):
    """Where a run was written and what it produced."""

    run_dir: Path
    summary: TrialSummary


class TrainExperimentUseCase:
    """Run all trials of one configuration and write the run directory."""

    def __init__(self, store: ResultStore):
        self.store = store

    def execute(
        self,
        config: RunConfig,
        jobs: int = 1,
        record_progress: bool = False,
        on_trial: Optional[TrialCallback] = None,
    ) -> ExperimentOutcome:
        """
        Train n_trials networks and persist summary, trials and manifest.

        Args:
            config: Resolved experiment configuration
            jobs: Worker processes
            record_progress: Also write progress.csv
            on_trial: Called as each trial completes

        Returns:
            Run directory and trial summary

        Raises:
            DatasetError: If the dataset cannot be loaded or split
            ResultStoreError: If outputs cannot be written
        """
        prepared = prepare_dataset(config)
        logger.info(
            "Training on %s: %d rows, split %s, %d trials from seed %d",
            config.data.name,
            len(prepared.raw),
            prepared.counts,
            config.run.n_trials,
            config.run.base_seed,
        )

        records: List[ProgressRecord] = []
        summary = run_trials(
            config.run.n_trials,
            prepared.raw,
            prepared.counts,
            config.cro,
            prepared.net,
            config.op,
            config.stop,
            base_seed=config.run.base_seed,
            jobs=jobs,
            sink=records.append if record_progress else None,
            on_trial=on_trial,
        )

        run_dir = self.store.create_run(config.data.name, config.run.base_seed)
        self.store.write_summary(run_dir, summary.statistics)
        self.store.write_trials(run_dir, summary.reports)
        self.store.write_manifest(run_dir, manifest_pairs(config, prepared))
        if record_progress:
            self.store.write_progress(run_dir, records)
        logger.info("Wrote run outputs to %s", run_dir)
        return ExperimentOutcome(run_dir=run_dir, summary=summary)
