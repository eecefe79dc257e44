"""Parameter sweep command."""

from pathlib import Path
from typing import Optional

import typer
from rich.table import Table

from croann.application.sweep import SWEEP_PARAMETERS, SweepUseCase, parse_values
from croann.config import settings
from croann.domain.models import ReactionKind
from croann.domain.value_objects import SweepPoint
from croann.infrastructure.storage.local import LocalResultStore
from .common import cli_errors, console, load_config


def sweep(
    parameter: str = typer.Argument(..., help=f"One of: {', '.join(SWEEP_PARAMETERS)}"),
    values: str = typer.Argument(..., help="Comma-separated values, e.g. 0.01,0.1,1.0"),
    config: str = typer.Option(..., "--config", "-c", help="Config file, or a name under the config dir"),
    jobs: Optional[int] = typer.Option(None, "--jobs", "-j", min=1, help="Worker processes"),
    seed: Optional[int] = typer.Option(None, "--seed", min=0, help="Override run.base_seed"),
    out: Optional[Path] = typer.Option(None, "--out", help="Override run.out_dir"),
):
    """Vary one optimizer parameter and record the test error per value."""
    with cli_errors():
        run_config = load_config(config, seed=seed, out=out)
        use_case = SweepUseCase(LocalResultStore(run_config.run.out_dir))

        def show(point: SweepPoint) -> None:
            console.print(
                f"  {parameter} = [cyan]{point.value}[/cyan]: "
                f"test {point.test_mean:.2f} ± {point.test_std:.2f}"
            )

        console.print(f"\n[bold cyan]Sweeping {parameter} on {run_config.data.name}[/bold cyan]\n")
        outcome = use_case.execute(
            run_config, parameter, parse_values(values), jobs=jobs or settings.jobs, on_point=show
        )

    table = Table(title=f"Sweep of {parameter}", show_header=True)
    table.add_column("Value", style="cyan")
    table.add_column("Test mean", justify="right")
    table.add_column("Test std", justify="right")
    for kind in ReactionKind:
        table.add_column(f"{kind.value} accepted", justify="right")
    for point in outcome.points:
        rates = [f"{point.accept_rates.get(kind, float('nan')):.3f}" for kind in ReactionKind]
        table.add_row(point.value, f"{point.test_mean:.2f}", f"{point.test_std:.2f}", *rates)
    console.print()
    console.print(table)
    console.print(f"\n[bold green]✓[/bold green] Sweep written to {outcome.run_dir}\n")
