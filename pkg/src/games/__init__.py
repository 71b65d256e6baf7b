"""Solvers for generalised safety/reachability games.

The modules build on each other bottom-up: ``game_core`` (arenas and plays),
``values`` (aVal/cVal/acVal), ``automata`` (Mealy strategies, parameterized
automata and products), ``dominance``, ``synthesis`` and ``chains``. ``oracle``
holds brute-force reference implementations used for validation.
"""

from src.games.automata import (
    ColoredProduct,
    MealyStrategy,
    ParamAutomaton,
    SyncProduct,
    colored_product,
    instantiate,
    one_player_product,
    parse_mealy,
    parse_param,
    sync_product,
)
from src.games.chains import (
    chain_below_chain,
    is_chain,
    is_increasing_chain,
    strategy_below_chain,
)
from src.games.dominance import (
    is_preadmissible,
    non_admissibility_witnesses,
    strictly_dominated,
    weakly_dominated,
)
from src.games.game_core import GameGraph, Lasso, Player, parse_game
from src.games.synthesis import (
    improve_to_maximal,
    preadmissibilize,
    synth_cooperative_optimal,
    synth_wco,
    synth_worst_case_optimal,
)
from src.games.values import ValueTriple, solve

__all__ = [
    "ColoredProduct",
    "GameGraph",
    "Lasso",
    "MealyStrategy",
    "ParamAutomaton",
    "Player",
    "SyncProduct",
    "ValueTriple",
    "chain_below_chain",
    "colored_product",
    "improve_to_maximal",
    "instantiate",
    "is_chain",
    "is_increasing_chain",
    "is_preadmissible",
    "non_admissibility_witnesses",
    "one_player_product",
    "parse_game",
    "parse_mealy",
    "parse_param",
    "preadmissibilize",
    "solve",
    "strategy_below_chain",
    "strictly_dominated",
    "sync_product",
    "synth_cooperative_optimal",
    "synth_wco",
    "synth_worst_case_optimal",
    "weakly_dominated",
]
