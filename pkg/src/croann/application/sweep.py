"""One-parameter sweeps over the optimizer settings."""

import logging
from pathlib import Path
from typing import Callable, Dict, List, Optional

from pydantic import BaseModel

from croann.domain.exceptions import ConfigurationError
from croann.domain.models import Split
from croann.domain.value_objects import SweepPoint
from croann.infrastructure.run_config import RunConfig
from croann.infrastructure.storage.base import ResultStore
from .experiment import manifest_pairs, prepare_dataset
from .training import acceptance_rates, run_trials

logger = logging.getLogger(__name__)

# Sweep name -> dotted configuration key
SWEEP_PARAMETERS: Dict[str, str] = {
    "gaussian_variance": "op.gaussian_variance",
    "pop_size": "cro.pop_size",
    "buffer_init": "cro.buffer_init",
    "initial_ke": "cro.initial_ke",
    "mole_coll": "cro.mole_coll",
    "ke_loss_rate": "cro.ke_loss_rate",
    "decomp_threshold": "cro.decomp_threshold",
    "synth_threshold": "cro.synth_threshold",
}


def parse_values(text: str) -> List[str]:
    """Split a comma-separated value list, keeping each value's text."""
    return [v.strip() for v in text.split(",") if v.strip()]


class SweepOutcome(BaseModel):
    """Sweep directory and one point per value."""

    run_dir: Path
    points: List[SweepPoint]


class SweepUseCase:
    """Vary one parameter, holding the rest at their configured values."""

    def __init__(self, store: ResultStore):
        self.store = store

    def execute(
        self,
        config: RunConfig,
        parameter: str,
        values: List[str],
        jobs: int = 1,
        on_point: Optional[Callable[[SweepPoint], None]] = None,
    ) -> SweepOutcome:
        """
        Run the configured trials once per value.

        Each value's row is appended to sweep.csv as soon as it finishes.

        Args:
            config: Base configuration
            parameter: One of SWEEP_PARAMETERS
            values: Values as text, echoed verbatim into sweep.csv
            jobs: Worker processes
            on_point: Called as each value finishes

        Returns:
            Sweep directory and points in value order

        Raises:
            ConfigurationError: If the parameter is unknown or a value invalid
        """
        key = SWEEP_PARAMETERS.get(parameter)
        if key is None:
            raise ConfigurationError(
                f"unknown sweep parameter {parameter!r}; choose from {', '.join(SWEEP_PARAMETERS)}"
            )
        if not values:
            raise ConfigurationError("no sweep values given", key=key)

        configs = [config.with_value(key, value) for value in values]
        prepared = prepare_dataset(config)

        run_dir = self.store.create_run(f"{config.data.name}-sweep-{parameter}", config.run.base_seed)
        self.store.write_manifest(
            run_dir,
            manifest_pairs(
                config,
                prepared,
                [("manifest.sweep_parameter", key), ("manifest.sweep_values", ",".join(values))],
            ),
        )

        points: List[SweepPoint] = []
        for value, point_config in zip(values, configs):
            logger.info("Sweep %s = %s", parameter, value)
            summary = run_trials(
                point_config.run.n_trials,
                prepared.raw,
                prepared.counts,
                point_config.cro,
                prepared.net,
                point_config.op,
                point_config.stop,
                base_seed=point_config.run.base_seed,
                jobs=jobs,
            )
            test = summary.statistics[Split.TEST]
            point = SweepPoint(
                parameter=parameter,
                value=value,
                test_mean=test.mean,
                test_std=test.std,
                accept_rates=acceptance_rates(summary.reports),
            )
            self.store.append_sweep(run_dir, point)
            points.append(point)
            if on_point is not None:
                on_point(point)

        return SweepOutcome(run_dir=run_dir, points=points)
