"""Benchmark training command."""

from pathlib import Path
from typing import Optional

import typer
from rich.progress import BarColumn, MofNCompleteColumn, Progress, SpinnerColumn, TextColumn

from croann.application.experiment import TrainExperimentUseCase
from croann.config import settings
from croann.infrastructure.storage.local import LocalResultStore
from .common import cli_errors, console, load_config, statistics_table


def train(
    config: str = typer.Option(..., "--config", "-c", help="Config file, or a name under the config dir"),
    jobs: Optional[int] = typer.Option(None, "--jobs", "-j", min=1, help="Worker processes"),
    seed: Optional[int] = typer.Option(None, "--seed", min=0, help="Override run.base_seed"),
    out: Optional[Path] = typer.Option(None, "--out", help="Override run.out_dir"),
    progress: bool = typer.Option(False, "--progress", help="Also write progress.csv"),
):
    """Run all trials of a configuration and write summary, trials and manifest."""
    with cli_errors():
        run_config = load_config(config, seed=seed, out=out)
        use_case = TrainExperimentUseCase(LocalResultStore(run_config.run.out_dir))

        console.print(f"\n[bold cyan]Training CROANN on {run_config.data.name}[/bold cyan]\n")
        console.print(f"[dim]Dataset:[/dim] {run_config.data.path}")
        console.print(f"[dim]Trials:[/dim] {run_config.run.n_trials} from seed {run_config.run.base_seed}")
        console.print(f"[dim]FE limit:[/dim] {run_config.cro.fe_limit}")
        console.print()

        with Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            BarColumn(),
            MofNCompleteColumn(),
            console=console,
        ) as bar:
            task = bar.add_task(description="Training...", total=run_config.run.n_trials)
            outcome = use_case.execute(
                run_config,
                jobs=jobs or settings.jobs,
                record_progress=progress,
                on_trial=lambda _: bar.advance(task),
            )

    console.print()
    console.print(statistics_table("Error rate (%)", outcome.summary.statistics))
    console.print(f"\n[bold green]✓[/bold green] Run written to {outcome.run_dir}\n")
