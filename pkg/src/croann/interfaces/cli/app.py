"""Main CLI application."""

from typing import Optional

import typer

from croann.config import settings
from croann.log import configure_logging
from .config import config_app
from .report import report
from .sweep import sweep
from .train import train

app = typer.Typer(
    name="croann",
    help="Train neural networks with chemical reaction optimization",
    no_args_is_help=True,
)

# Add subcommands
app.command("train")(train)
app.command("sweep")(sweep)
app.command("report")(report)
app.add_typer(config_app, name="config", help="Configuration")


@app.callback()
def callback(
    log_level: Optional[str] = typer.Option(None, "--log-level", help="DEBUG, INFO, WARNING or ERROR"),
):
    """CROANN benchmark runner."""
    configure_logging(log_level or settings.log_level)


def main():
    """Entry point for CLI."""
    app()


if __name__ == "__main__":
    main()
