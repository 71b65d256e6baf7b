"""Score functions and a small runner shared by the corpus evals.

Each eval yields cases, runs a task per case and scores the output with the
functions below; scores are floats in [0, 1].
"""

import time
from typing import Any, Callable, Iterable, Optional

from pydantic import BaseModel
from rich.console import Console
from rich.table import Table

console = Console()


class EvalCase(BaseModel):
    name: str
    input: dict[str, Any]
    metadata: dict[str, Any] = {}


class CaseResult(BaseModel):
    name: str
    scores: dict[str, float]
    seconds: float
    error: Optional[str] = None


def agreement_scorer(output: dict) -> float:
    """Fraction of checks on which solver and oracle agree."""
    checks = output.get("checks", 0)
    if checks == 0:
        return 1.0
    return 1.0 - output.get("mismatches", 0) / checks


def contract_scorer(output: dict) -> float:
    """1.0 iff every postcondition of the synthesis run held."""
    return 1.0 if all(output.get("postconditions", {}).values()) else 0.0


def time_budget_scorer(output: dict, budget: float = 5.0) -> float:
    """Full score within ``budget`` seconds, decaying linearly to 0 at twice it."""
    seconds = output.get("seconds", 0.0)
    if seconds <= budget:
        return 1.0
    return max(0.0, 1.0 - (seconds - budget) / budget)


def run_eval(
    name: str,
    data: Iterable[EvalCase],
    task: Callable[[dict], dict],
    scores: list[Callable[[dict], float]],
) -> list[CaseResult]:
    """Run ``task`` on every case and print a summary table."""
    results = []
    for case in data:
        start = time.perf_counter()
        try:
            output = task(case.input)
            error = None
        except Exception as e:  # noqa: BLE001
            output, error = {}, f"{type(e).__name__}: {e}"
        seconds = time.perf_counter() - start
        output.setdefault("seconds", seconds)
        values = {} if error else {f.__name__: f(output) for f in scores}
        results.append(CaseResult(name=case.name, scores=values, seconds=seconds, error=error))

    table = Table(title=name, header_style="bold cyan")
    table.add_column("case")
    for f in scores:
        table.add_column(f.__name__.removesuffix("_scorer"), justify="right")
    table.add_column("seconds", justify="right")
    for r in results:
        if r.error:
            row = [f"[red]{r.error}[/red]"] + [""] * (len(scores) - 1)
        else:
            row = [f"{r.scores[f.__name__]:.2f}" for f in scores]
        table.add_row(r.name, *row, f"{r.seconds:.2f}")
    console.print(table)
    return results
