"""
Scaling smoke check - chain decisions on growing lollipop games.

Times is_chain, strategy_below_chain and chain_below_chain per size and fits
seconds ~ (|G||S|)^k on a log-log scale; growth should stay below cubic.
"""

import argparse
import math
import statistics
import sys
import time
from pathlib import Path

from rich.table import Table

# Ensure project root is on sys.path
project_root = Path(__file__).resolve().parents[1]
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

from evals.scorers import EvalCase, console, run_eval, time_budget_scorer  # noqa: E402
from src.config import SolverConfig  # noqa: E402
from src.games.automata import instantiate, materialize  # noqa: E402
from src.games.chains import (  # noqa: E402
    chain_below_chain,
    chain_report,
    strategy_below_chain,
)
from src.games.oracle import lollipop_chain, lollipop_game  # noqa: E402

OPERATIONS = ("is_chain", "strategy_below_chain", "chain_below_chain")

solver = SolverConfig()
timings: list[dict] = []


def timed(fn, *args) -> tuple[bool, float]:
    start = time.perf_counter()
    holds = fn(*args)
    return holds, time.perf_counter() - start


def task(input: dict) -> dict:
    g = lollipop_game(input["size"])
    p = lollipop_chain(g)
    member = materialize(instantiate(p, 1))
    chain_holds, chain_seconds = timed(
        lambda: chain_report(p, g, workers=solver.workers).holds
    )
    below_holds, below_seconds = timed(
        strategy_below_chain, member, p, g, solver.workers
    )
    chains_holds, chains_seconds = timed(chain_below_chain, p, p, g, solver.workers)
    output = {
        "product_size": len(g) * p.size,
        "holds": chain_holds and below_holds and chains_holds,
        "is_chain": chain_seconds,
        "strategy_below_chain": below_seconds,
        "chain_below_chain": chains_seconds,
        "seconds": chain_seconds + below_seconds + chains_seconds,
    }
    timings.append(output)
    return output


def holds_scorer(output: dict) -> float:
    return 1.0 if output.get("holds") else 0.0


def fitted_exponent(xs: list[int], ys: list[float]) -> float:
    """Slope of log(ys) against log(xs)."""
    slope, _ = statistics.linear_regression(
        [math.log(x) for x in xs], [math.log(max(y, 1e-9)) for y in ys]
    )
    return slope


def growth_table(rows: list[dict]) -> tuple[Table, bool]:
    rows = sorted(rows, key=lambda r: r["product_size"])
    sizes = [r["product_size"] for r in rows]
    table = Table(title="growth in |G||S|", header_style="bold cyan")
    table.add_column("operation")
    for size in sizes:
        table.add_column(str(size), justify="right")
    table.add_column("exponent", justify="right")
    table.add_column("monotone", justify="center")
    sub_cubic = True
    for op in OPERATIONS:
        seconds = [r[op] for r in rows]
        k = fitted_exponent(sizes, seconds)
        monotone = all(a <= b for a, b in zip(seconds, seconds[1:]))
        sub_cubic = sub_cubic and k < 3
        style = "green" if k < 3 else "red"
        table.add_row(
            op,
            *(f"{s:.3f}" for s in seconds),
            f"[{style}]{k:.2f}[/{style}]",
            "yes" if monotone else "no",
        )
    return table, sub_cubic


def data(sizes: list[int]):
    for size in sizes:
        yield EvalCase(name=f"lollipop {size}", input={"size": size})


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", type=int, nargs="+", default=[10, 20, 40, 80])
    args = parser.parse_args()
    results = run_eval(
        "scaling", data(args.sizes), task, [holds_scorer, time_budget_scorer]
    )
    sub_cubic = True
    if len(timings) >= 2:
        table, sub_cubic = growth_table(timings)
        console.print(table)
    ok = all(r.scores.get("holds_scorer") == 1.0 for r in results)
    return 0 if ok and sub_cubic else 1


if __name__ == "__main__":
    sys.exit(main())
