"""Training runs: CRO wiring, overfitness stopping and multi-trial statistics."""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from croann.domain.cro import ChemicalReactionOptimizer
from croann.domain.dataset import DatasetSplit, RawDataset, split_dataset
from croann.domain.entities import EngineState
from croann.domain.models import (
    CroParams,
    NetworkConfig,
    OperatorParams,
    ReactionKind,
    Split,
    StoppingConfig,
    StopReason,
)
from croann.domain.network import classify, fitness, forward, percent_error
from croann.domain.operators import NetworkOperators
from croann.domain.value_objects import (
    Portion,
    ProgressRecord,
    SolutionStructure,
    SplitStatistics,
    TrialReport,
)

logger = logging.getLogger(__name__)

ProgressSink = Callable[[ProgressRecord], None]
TrialCallback = Callable[[TrialReport], None]
Validator = Callable[[SolutionStructure], float]


class StoppingState(BaseModel):
    """Sliding-window bookkeeping."""

    window_size: int = Field(..., gt=0, description="Training evaluations per window")
    max_window_count: int = Field(..., gt=0, description="Non-improving windows tolerated")
    overfit_count: int = Field(default=0, ge=0, description="Consecutive non-improving windows")
    val_best: float = Field(default=float("inf"), description="Best validation fitness so far")
    saved_network: Optional[SolutionStructure] = Field(default=None, description="Network at val_best")

    model_config = ConfigDict(arbitrary_types_allowed=True)

    @classmethod
    def from_config(cls, config: StoppingConfig) -> "StoppingState":
        return cls(window_size=config.window_size, max_window_count=config.max_window_count)


def check_stopping(
    st: StoppingState,
    current_best: SolutionStructure,
    validate: Validator,
    fe_count: int,
    fe_limit: int,
) -> Optional[StopReason]:
    """
    One window-boundary check.

    Args:
        st: Window state, updated in place
        current_best: Global best network on training fitness
        validate: Validation fitness of a network
        fe_count: Training evaluations consumed
        fe_limit: Training evaluation budget

    Returns:
        None to continue, otherwise the reason to stop
    """
    if fe_count >= fe_limit:
        return StopReason.FE_LIMIT

    val_fitness = validate(current_best)
    if val_fitness < st.val_best:
        st.overfit_count = 0
        st.val_best = val_fitness
        st.saved_network = current_best
        return None

    st.overfit_count += 1
    if st.overfit_count > st.max_window_count:
        return StopReason.OVERFITNESS
    return None


def validation_fitness(portion: Portion, cfg: NetworkConfig) -> Validator:
    """Validator computing the composite fitness on a portion."""
    return lambda s: fitness(s, portion, cfg)


class StoppingMonitor:
    """
    Engine stop check running check_stopping at every window boundary.

    A boundary is crossed each time fe_count passes a multiple of the
    window size; a reaction spanning several boundaries triggers one check.
    """

    def __init__(
        self,
        config: StoppingConfig,
        fe_limit: int,
        validate: Validator,
        trial: int = 0,
        sink: Optional[ProgressSink] = None,
    ):
        self.state = StoppingState.from_config(config)
        self.fe_limit = fe_limit
        self.validate = validate
        self.trial = trial
        self.sink = sink
        self.reason: Optional[StopReason] = None
        self.checks = 0
        self._window = 0
        self._last_val = float("nan")

    def _validate(self, s: SolutionStructure) -> float:
        value = self.validate(s)
        self._last_val = value
        return value

    def __call__(self, engine: EngineState) -> bool:
        window = engine.fe_count // self.state.window_size
        if window <= self._window and engine.fe_count < self.fe_limit:
            return False
        self._window = window
        self._last_val = float("nan")

        reason = check_stopping(
            self.state, engine.global_best_structure, self._validate, engine.fe_count, self.fe_limit
        )
        if reason is StopReason.FE_LIMIT:
            self.reason = reason
            return False

        self.checks += 1
        logger.debug(
            "Trial %d window %d: train %.4f val %.4f (best %.4f, overfit %d)",
            self.trial,
            window,
            engine.global_best_pe,
            self._last_val,
            self.state.val_best,
            self.state.overfit_count,
        )
        if self.sink is not None:
            self.sink(
                ProgressRecord(
                    trial=self.trial,
                    fe_count=engine.fe_count,
                    train_fitness=engine.global_best_pe,
                    val_fitness=self._last_val,
                )
            )
        self.reason = reason
        return reason is StopReason.OVERFITNESS


def trial_streams(seed: int) -> Tuple[np.random.SeedSequence, np.random.SeedSequence]:
    """Independent seed streams for a trial's split and its optimizer."""
    split_seq, engine_seq = np.random.SeedSequence(seed).spawn(2)
    return split_seq, engine_seq


def portion_error(network: SolutionStructure, portion: Portion) -> float:
    """Misclassification percentage of a network on a portion."""
    return percent_error(classify(forward(network, portion.inputs)), portion.labels)


def train_once(
    dataset: DatasetSplit,
    cro: CroParams,
    net: NetworkConfig,
    op: OperatorParams,
    stop: StoppingConfig,
    seed: int,
    trial: int = 0,
    sink: Optional[ProgressSink] = None,
) -> TrialReport:
    """
    Train one network with CRO and report its error on every portion.

    Args:
        dataset: Normalized split
        cro: Optimizer parameters
        net: Network dimensions and fitness weights
        op: Operator parameters
        stop: Sliding-window settings
        seed: Trial seed; the optimizer draws from its engine stream
        trial: Trial index for reports and progress records
        sink: Receives a progress record at every window check

    Returns:
        Error percentages of the final network, evaluations used and stop reason
    """
    _, engine_seq = trial_streams(seed)
    operators = NetworkOperators(net, op)
    monitor = StoppingMonitor(
        stop, cro.fe_limit, validation_fitness(dataset.validation, net), trial=trial, sink=sink
    )
    engine = ChemicalReactionOptimizer(
        cro,
        objective=lambda s: fitness(s, dataset.train, net),
        rng=np.random.default_rng(engine_seq),
        progress=lambda fe, pe: logger.debug("Trial %d: best %.6f at FE %d", trial, pe, fe),
    )
    result = engine.run(
        operators.generate,
        operators.neighbour,
        operators.decompose,
        operators.synthesize,
        stop_check=monitor,
    )

    if monitor.reason is StopReason.OVERFITNESS and monitor.state.saved_network is not None:
        reason = StopReason.OVERFITNESS
        final = monitor.state.saved_network
    else:
        reason = StopReason.FE_LIMIT
        final = result.best_structure

    report = TrialReport(
        trial=trial,
        seed=seed,
        train_error=portion_error(final, dataset.train),
        validation_error=portion_error(final, dataset.validation),
        test_error=portion_error(final, dataset.test),
        fe_used=result.fe_count,
        stop_reason=reason,
        train_fitness=fitness(final, dataset.train, net),
        attempted=dict(result.reactions.attempted),
        accepted=dict(result.reactions.accepted),
    )
    logger.info(
        "Trial %d (seed %d): test error %.2f%%, %s after %d FE, reactions accepted %s",
        trial,
        seed,
        report.test_error,
        reason.value,
        result.fe_count,
        {k.value: v for k, v in result.reactions.accepted.items()},
    )
    return report


class TrialTask(BaseModel):
    """Everything one worker needs to run a trial."""

    raw: RawDataset
    counts: Tuple[int, int, int]
    cro: CroParams
    net: NetworkConfig
    op: OperatorParams
    stop: StoppingConfig
    seed: int
    trial: int

    model_config = ConfigDict(arbitrary_types_allowed=True)


def _run_task(task: TrialTask) -> Tuple[TrialReport, List[ProgressRecord]]:
    records: List[ProgressRecord] = []
    split_seq, _ = trial_streams(task.seed)
    split = split_dataset(task.raw, task.counts, split_seq)
    report = train_once(
        split, task.cro, task.net, task.op, task.stop, task.seed, trial=task.trial, sink=records.append
    )
    return report, records


class TrialSummary(BaseModel):
    """Per-trial reports plus aggregate statistics per portion."""

    reports: List[TrialReport]
    statistics: Dict[Split, SplitStatistics]


def aggregate(reports: List[TrialReport]) -> Dict[Split, SplitStatistics]:
    """Mean, sample standard deviation, min and max of the error per portion."""
    columns = {
        Split.TRAIN: [r.train_error for r in reports],
        Split.VALIDATION: [r.validation_error for r in reports],
        Split.TEST: [r.test_error for r in reports],
    }
    stats: Dict[Split, SplitStatistics] = {}
    for split, values in columns.items():
        arr = np.asarray(values, dtype=np.float64)
        stats[split] = SplitStatistics(
            mean=float(arr.mean()),
            std=float(arr.std(ddof=1)) if arr.size > 1 else 0.0,
            min=float(arr.min()),
            max=float(arr.max()),
        )
    return stats


def acceptance_rates(reports: List[TrialReport]) -> Dict[ReactionKind, float]:
    """Mean acceptance rate per reaction kind over the trials that attempted it."""
    rates: Dict[ReactionKind, float] = {}
    for kind in ReactionKind:
        values = [r for report in reports if (r := report.acceptance_rate(kind)) is not None]
        rates[kind] = float(np.mean(values)) if values else float("nan")
    return rates


def run_trials(
    n_trials: int,
    raw: RawDataset,
    counts: Tuple[int, int, int],
    cro: CroParams,
    net: NetworkConfig,
    op: OperatorParams,
    stop: StoppingConfig,
    base_seed: int,
    jobs: int = 1,
    sink: Optional[ProgressSink] = None,
    on_trial: Optional[TrialCallback] = None,
) -> TrialSummary:
    """
    Independent trials with seeds base_seed .. base_seed + n_trials - 1.

    Each trial resamples its own split from its seed. Reports and progress
    records come back in trial order whatever the completion order.

    Args:
        n_trials: Number of trials (>= 1)
        raw: Parsed dataset
        counts: Split counts
        cro: Optimizer parameters
        net: Network configuration
        op: Operator parameters
        stop: Sliding-window settings
        base_seed: Seed of trial 0
        jobs: Worker processes; 1 runs in this process
        sink: Receives progress records
        on_trial: Called as each trial completes

    Returns:
        Reports and aggregate statistics
    """
    if n_trials < 1:
        raise ValueError("n_trials must be at least 1")

    tasks = [
        TrialTask(raw=raw, counts=counts, cro=cro, net=net, op=op, stop=stop, seed=base_seed + i, trial=i)
        for i in range(n_trials)
    ]
    results: List[Optional[Tuple[TrialReport, List[ProgressRecord]]]] = [None] * n_trials

    if jobs <= 1:
        for task in tasks:
            results[task.trial] = _run_task(task)
            if on_trial is not None:
                on_trial(results[task.trial][0])  # type: ignore[index]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = {pool.submit(_run_task, task): task.trial for task in tasks}
            for future, trial in futures.items():
                results[trial] = future.result()
                if on_trial is not None:
                    on_trial(results[trial][0])  # type: ignore[index]

    reports: List[TrialReport] = []
    for outcome in results:
        assert outcome is not None
        report, records = outcome
        reports.append(report)
        if sink is not None:
            for record in records:
                sink(record)
    return TrialSummary(reports=reports, statistics=aggregate(reports))
