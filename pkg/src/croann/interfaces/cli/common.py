"""Shared CLI helpers: console, config loading and error exits."""

from contextlib import contextmanager
from pathlib import Path
from typing import Dict, Iterator, Optional

import typer
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from croann.config import settings
from croann.domain.exceptions import ConfigurationError, CroannError, DatasetError
from croann.domain.models import Split
from croann.domain.value_objects import SplitStatistics
from croann.infrastructure.run_config import RunConfig, load_run_config

console = Console()

EXIT_FAILURE = 1
EXIT_USAGE = 2


@contextmanager
def cli_errors() -> Iterator[None]:
    """Turn domain errors into a message and an exit code."""
    try:
        yield
    except (ConfigurationError, DatasetError) as e:
        console.print(f"\n[bold red]Error:[/bold red] {escape(str(e))}\n", style="red")
        raise typer.Exit(EXIT_USAGE)
    except CroannError as e:
        console.print(f"\n[bold red]Error:[/bold red] {escape(str(e))}\n", style="red")
        raise typer.Exit(EXIT_FAILURE)


def load_config(name: str, seed: Optional[int] = None, out: Optional[Path] = None) -> RunConfig:
    """Load a config file and apply --seed and --out."""
    config = load_run_config(settings.resolve_config(name))
    if seed is not None:
        config = config.with_value("run.base_seed", seed)
    if out is not None:
        config = config.with_value("run.out_dir", out)
    return config


def statistics_table(title: str, statistics: Dict[Split, SplitStatistics]) -> Table:
    table = Table(title=title, show_header=True)
    table.add_column("Split", style="cyan", no_wrap=True)
    for column in ("Mean", "Std", "Min", "Max"):
        table.add_column(column, style="white", justify="right")
    for split in Split:
        s = statistics[split]
        table.add_row(split.value, f"{s.mean:.2f}", f"{s.std:.2f}", f"{s.min:.2f}", f"{s.max:.2f}")
    return table
