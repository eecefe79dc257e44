"""Report command."""

from pathlib import Path
from typing import Optional

import typer
from rich.table import Table

from croann.application.reporting import COLUMNS, PUBLISHED_SOURCE, ReportUseCase
from croann.config import settings
from croann.infrastructure.storage.local import LocalResultStore
from .common import cli_errors, console


def report(
    run_dir: Optional[Path] = typer.Argument(None, help="Run directory or directory of runs"),
):
    """Compare run summaries with the published CROANN results."""
    root = run_dir or settings.out_dir
    with cli_errors():
        result, path = ReportUseCase(LocalResultStore(root)).execute(root)

    table = Table(title="CROANN error rates (%)", show_header=True)
    for column in COLUMNS:
        justify = "right" if column in ("mean", "std", "min", "max") else "left"
        table.add_column(column, justify=justify)
    for row in result.rows():
        table.add_row(*row, style="dim" if row[1] == PUBLISHED_SOURCE else None)
    console.print()
    console.print(table)
    console.print(f"\n[bold green]✓[/bold green] Report written to {path}\n")
