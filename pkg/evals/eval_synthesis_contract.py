"""
Synthesis contract - postconditions of the improvement procedure on random inputs.
"""

import argparse
import sys
from pathlib import Path

# Ensure project root is on sys.path
project_root = Path(__file__).resolve().parents[1]
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

from evals.scorers import EvalCase, console, contract_scorer, run_eval  # noqa: E402
from src.config import GenConfig, SolverConfig  # noqa: E402
from src.games.automata import instantiate  # noqa: E402
from src.games.chains import (  # noqa: E402
    below_chain_bounds,
    chain_bounds,
    is_chain,
    strategy_size,
)
from src.games.dominance import (  # noqa: E402
    is_admissible,
    is_preadmissible,
    weakly_dominated,
)
from src.games.oracle import gen_random_game, gen_random_mealy  # noqa: E402
from src.games.synthesis import (  # noqa: E402
    ResultKind,
    improve_to_maximal,
    preadmissibilize,
)

solver = SolverConfig()


def sampled_maximality(chain, g, cfg: GenConfig, samples: int = 5) -> bool:
    """Random strategies above the chain at its strategy bound stay below a
    later member."""
    for k in range(samples):
        tau = gen_random_mealy(cfg.model_copy(update={"mealy_states": 3}), g, f"tau{k}")
        n = below_chain_bounds(tau, chain, g).n_strategy
        if not weakly_dominated(instantiate(chain, n), tau, g).holds:
            continue
        top = chain.size * strategy_size(tau, g) + 1
        if not weakly_dominated(tau, instantiate(chain, top), g).holds:
            return False
    return True


def task(input: dict) -> dict:
    cfg = GenConfig(**input["gen"])
    g = gen_random_game(cfg)
    s = gen_random_mealy(cfg, g)

    pre = preadmissibilize(s, g)
    post = {
        "preadmissible": is_preadmissible(pre, g),
        "pre_dominates": weakly_dominated(s, pre, g).holds,
    }
    result = improve_to_maximal(s, g)
    if result.kind is ResultKind.SINGLE:
        post["admissible"] = is_admissible(result.strategy, g)
        post["dominates"] = weakly_dominated(s, result.strategy, g).holds
    else:
        post["chain"] = is_chain(result.strategy, g, workers=solver.workers)
        n_top = chain_bounds(g, result.strategy.size).n_weak
        post["dominates"] = all(
            weakly_dominated(s, instantiate(result.strategy, n), g).holds
            for n in (*solver.chain_samples, n_top)
        )
        post["maximal_on_samples"] = sampled_maximality(result.strategy, g, cfg)
    return {"postconditions": post, "kind": result.kind.value}


# generator profiles; "rich" reaches the chain branch of the improvement
PROFILES = {
    "default": {"vertex_count": 5, "mealy_states": 2},
    "rich": {
        "vertex_count": 6,
        "max_out_degree": 3,
        "mealy_states": 3,
        "payoff_range": (0, 3),
    },
}


def chain_scorer(output: dict) -> float:
    return 1.0 if output.get("kind") == ResultKind.CHAIN.value else 0.0


def data(seed: int, count: int, profile: str):
    for i in range(count):
        yield EvalCase(
            name=f"seed {seed + i}",
            input={"gen": {"seed": seed + i, **PROFILES[profile]}},
        )


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--count", type=int, default=200)
    parser.add_argument("--profile", choices=sorted(PROFILES), default="rich")
    args = parser.parse_args()
    results = run_eval(
        f"synthesis contract ({args.profile})",
        data(args.seed, args.count, args.profile),
        task,
        [contract_scorer, chain_scorer],
    )
    chains = sum(r.scores.get("chain_scorer", 0.0) for r in results)
    console.print(f"{int(chains)} of {len(results)} results are uniform chains")
    return 0 if all(r.scores.get("contract_scorer") == 1.0 for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
