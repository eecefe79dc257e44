"""Configuration commands."""

from pathlib import Path
from typing import Optional

import typer
from rich.table import Table

from croann.config import settings
from croann.domain.models import PRESETS, get_preset
from croann.infrastructure.run_config import ENV_PREFIX, preset_config, render_config
from .common import cli_errors, console, load_config

config_app = typer.Typer()


@config_app.command("show")
def show_config(
    config: str = typer.Option(..., "--config", "-c", help="Config file, or a name under the config dir"),
):
    """Show the resolved configuration, environment overrides applied."""
    with cli_errors():
        run_config = load_config(config)

    table = Table(title="Configuration", show_header=True)
    table.add_column("Key", style="cyan", no_wrap=True)
    table.add_column("Value", style="white")
    for key, value in run_config.to_pairs():
        table.add_row(key, value)
    table.add_row("", "")
    table.add_row("settings.jobs", str(settings.jobs))
    table.add_row("settings.out_dir", str(settings.out_dir))
    table.add_row("settings.log_level", settings.log_level)

    console.print()
    console.print(table)
    console.print()
    console.print("[dim]Any key can be overridden via environment variables:[/dim]")
    console.print(f"[dim]  cro.pop_size -> {ENV_PREFIX}CRO__POP_SIZE[/dim]\n")


@config_app.command("presets")
def list_presets():
    """List the benchmark dataset presets."""
    table = Table(title="Dataset Presets", show_header=True)
    table.add_column("Name", style="cyan", no_wrap=True)
    table.add_column("File", style="white")
    table.add_column("Split", style="green")
    table.add_column("FE limit", style="yellow", justify="right")
    table.add_column("Max windows", style="magenta", justify="right")
    table.add_column("Description", style="dim")

    for preset in PRESETS.values():
        table.add_row(
            preset.name,
            preset.filename,
            "/".join(str(c) for c in preset.split),
            str(preset.fe_limit),
            str(preset.max_window_count),
            preset.description,
        )

    console.print()
    console.print(table)
    console.print()
    console.print("[dim]Usage:[/dim] croann config init [cyan]iris[/cyan] --output my.conf\n")


@config_app.command("init")
def init_config(
    preset: str = typer.Argument(..., help="Preset name (see 'config presets')"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Config file to write"),
    data_dir: Optional[Path] = typer.Option(None, "--data-dir", help="Directory holding the dataset"),
    force: bool = typer.Option(False, "--force", help="Overwrite an existing file"),
):
    """Write a config file with the published defaults for a preset."""
    with cli_errors():
        chosen = get_preset(preset)

    target = output or settings.config_dir / f"{chosen.name}.conf"
    if target.exists() and not force:
        console.print(f"\n[bold red]Error:[/bold red] {target} exists (use --force)\n", style="red")
        raise typer.Exit(1)

    text = render_config(preset_config(chosen, data_dir or settings.data_dir), header=chosen.description)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text, encoding="utf-8")
    console.print(f"\n[bold green]✓[/bold green] Wrote {target}")
    console.print("[dim]Fetch the data with:[/dim] ./fetch_datasets.sh\n")
