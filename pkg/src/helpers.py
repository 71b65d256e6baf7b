import logging
from typing import Optional

from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape
from rich.panel import Panel
from rich.table import Table

from src.games.chains import ChainBounds
from src.games.oracle import CorpusReport

console = Console(highlight=False, soft_wrap=True)
err_console = Console(stderr=True, highlight=False)


def setup_logging(verbose: bool = False):
    """Route library logs to stderr through rich."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=err_console, show_path=False)],
        force=True,
    )


def emit(line: str):
    """Write one machine-readable line to stdout, verbatim.

    Bypasses rendering so tabs survive.
    """
    console.file.write(line + "\n")


def print_error(message: str):
    err_console.print(f"[bold red]Error: {escape(message)}[/bold red]")


def print_bounds(bounds: ChainBounds):
    """Print chain bounds as ``key=value`` pairs."""
    parts = [f"N_weak={bounds.n_weak}"]
    if bounds.n_strict.bit_length() <= 64:
        parts.append(f"N_strict={bounds.n_strict}")
    else:
        parts.append(f"N_strict~2^{bounds.n_strict.bit_length() - 1}")
    if bounds.n_strategy is not None:
        parts.append(f"N_strategy={bounds.n_strategy}")
    if bounds.n_chain is not None:
        parts.append(f"N_chain={bounds.n_chain}")
    emit("bounds " + " ".join(parts))


def corpus_panel(report: CorpusReport, title: Optional[str] = None) -> Panel:
    """Summary of an oracle corpus run as a rich panel."""
    table = Table(show_header=True, header_style="bold cyan")
    table.add_column("check")
    table.add_column("total", justify="right")
    table.add_column("mismatches", justify="right")
    table.add_row("values", str(report.value_checks), str(report.value_mismatches))
    table.add_row(
        "dominance", str(report.dominance_checks), str(report.dominance_mismatches)
    )
    style = "green" if report.passed else "red"
    return Panel(
        table,
        title=title or f"{report.instances} instances from seed {report.seed}",
        title_align="left",
        border_style=style,
        padding=(0, 1),
    )
