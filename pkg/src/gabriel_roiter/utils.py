"""Rich rendering helpers and logging setup shared by the CLI."""

import json
import logging
from typing import Any, Iterable, Mapping, Optional, Sequence

from rich.console import Console
from rich.logging import RichHandler
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

console = Console()
err_console = Console(stderr=True)

_LOG_FORMAT = "%(message)s"


def configure_logging(level: str = "WARNING") -> None:
    """Route all package loggers through a RichHandler on stderr.

    Calling it again only changes the level.
    """
    root = logging.getLogger("gabriel_roiter")
    root.setLevel(level.upper())
    if not any(isinstance(h, RichHandler) for h in root.handlers):
        handler = RichHandler(console=err_console, show_path=False, markup=False)
        handler.setFormatter(logging.Formatter(_LOG_FORMAT))
        root.addHandler(handler)
        root.propagate = False


def format_value(value: Any) -> str:
    """Render a JSON chain value compactly, with braces for chains."""
    if isinstance(value, list):
        return "{" + ", ".join(format_value(v) for v in value) + "}"
    return str(value)


def emit_json(payload: Mapping[str, Any], out: Optional[Console] = None) -> None:
    """Write a JSON document to stdout, keys in insertion order."""
    target = out or console
    target.print(json.dumps(payload, indent=2), markup=False, emoji=False, highlight=False, soft_wrap=True)


def emit_text(text: str, out: Optional[Console] = None) -> None:
    """Write plain text (DOT files, verdicts) without rich markup."""
    target = out or console
    target.print(text, markup=False, emoji=False, highlight=False, soft_wrap=True)


def show_table(
    title: str,
    columns: Sequence[str],
    rows: Iterable[Sequence[Any]],
    out: Optional[Console] = None,
) -> None:
    """Display rows in a rich table."""
    table = Table(title=title, header_style="bold cyan")
    for column in columns:
        table.add_column(column)
    for row in rows:
        table.add_row(*(Text(str(cell)) for cell in row))
    (out or console).print(table)


def show_failure(message: str, title: str = "Error", border_style: str = "red") -> None:
    """Display a failure panel on stderr."""
    err_console.print(
        Panel(
            Text(message),
            title=f"[bold]{title}[/bold]",
            border_style=border_style,
            padding=(0, 1),
        )
    )
