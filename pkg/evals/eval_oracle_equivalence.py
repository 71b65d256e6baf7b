"""
Oracle equivalence - the solver against brute force on random small games.
"""

import argparse
import sys
from pathlib import Path

# Ensure project root is on sys.path
project_root = Path(__file__).resolve().parents[1]
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

from evals.scorers import EvalCase, agreement_scorer, run_eval  # noqa: E402
from src.config import GenConfig, OracleGuards  # noqa: E402
from src.games.automata import instantiate  # noqa: E402
from src.games.chains import chain_report  # noqa: E402
from src.games.dominance import weakly_dominated  # noqa: E402
from src.games.oracle import (  # noqa: E402
    gen_random_game,
    gen_random_param,
    run_corpus,
)


def value_and_dominance_task(input: dict) -> dict:
    cfg = GenConfig(**input["gen"])
    report = run_corpus(cfg, input["count"], OracleGuards(**input["guards"]))
    return {
        "checks": report.value_checks + report.dominance_checks,
        "mismatches": report.value_mismatches + report.dominance_mismatches,
        "counterexample": report.counterexample,
    }


def chain_reduction_task(input: dict) -> dict:
    """``is_chain`` against pairwise checks up to three times its bound."""
    checks = mismatches = 0
    for i in range(input["count"]):
        cfg = GenConfig(**{**input["gen"], "seed": input["gen"]["seed"] + i})
        g = gen_random_game(cfg)
        p = gen_random_param(cfg, g)
        report = chain_report(p, g, workers=1)
        horizon = 3 * report.bounds.n_weak
        exhaustive = all(
            weakly_dominated(instantiate(p, n), instantiate(p, n + 1), g).holds
            for n in range(horizon + 1)
        )
        checks += 1
        mismatches += report.holds != exhaustive
    return {"checks": checks, "mismatches": mismatches}


def data(seed: int, count: int):
    for vertices in (4, 5, 6):
        gen = {"seed": seed, "vertex_count": vertices, "leaf_count": 2}
        yield EvalCase(
            name=f"values+dominance/{vertices}v",
            input={"gen": gen, "count": count, "guards": {}, "kind": "corpus"},
        )
        yield EvalCase(
            name=f"chain-reduction/{vertices}v",
            input={"gen": gen, "count": max(1, count // 10), "kind": "chains"},
        )


def task(input: dict) -> dict:
    if input["kind"] == "chains":
        return chain_reduction_task(input)
    return value_and_dominance_task(input)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--count", type=int, default=200)
    args = parser.parse_args()
    results = run_eval("oracle equivalence", data(args.seed, args.count), task, [agreement_scorer])
    return 0 if all(r.scores.get("agreement_scorer") == 1.0 for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
