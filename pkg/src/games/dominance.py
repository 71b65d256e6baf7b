"""Dominance, admissibility and preadmissibility of Mealy strategies.

All decisions are local to product states: payoffs are prefix-independent, so
the values of a strategy after a history only depend on the memory state and
the current vertex.
"""

import logging
from collections.abc import Hashable
from dataclasses import dataclass, field
from typing import Optional

import networkx as nx

from src.games.automata import (
    MealyStrategy,
    check_game,
    one_player_product,
    sync_product,
)
from src.games.game_core import GameGraph, VertexId
from src.games.values import Mode, OnePlayerProduct, product_values, solve

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Witness:
    """Divergence state certifying non-dominance, with its access path."""

    state: tuple[Hashable, VertexId, Hashable]
    path: tuple[tuple[Hashable, VertexId, Hashable], ...]
    cval: int
    aval: int

    def history(self, g: GameGraph) -> list[str]:
        return [g.names[v] for _, v, _ in self.path]


@dataclass(frozen=True)
class DominanceVerdict:
    holds: bool
    witness: Optional[Witness] = None


@dataclass(frozen=True)
class AdmissibilityVerdict:
    admissible: bool
    witnesses: list[tuple[Hashable, VertexId]] = field(default_factory=list)
    preadmissible: bool = True
    problematic: list[tuple[Hashable, VertexId]] = field(default_factory=list)


def weakly_dominated(
    s1: MealyStrategy, s2: MealyStrategy, g: GameGraph
) -> DominanceVerdict:
    """Decide whether ``s2`` weakly dominates ``s1``.

    ``s1`` is dominated unless some reachable divergence lets ``s1`` hope for
    more than ``s2`` can guarantee. The BFS-first such divergence is returned
    as witness.
    """
    sp = sync_product(s1, g, s2)
    if not sp.divergences:
        return DominanceVerdict(True)
    p1 = one_player_product(s1, g)
    p2 = one_player_product(s2, g)
    for i in sp.divergences:
        m1, v, m2 = sp.states[i]
        cval = product_values(p1, (m1, v), Mode.MAX)
        aval = product_values(p2, (m2, v), Mode.MIN)
        if cval > aval:
            path = tuple(sp.states[j] for j in sp.access_path(i))
            logger.debug("non-dominance witness at %s: %d > %d", g.names[v], cval, aval)
            return DominanceVerdict(False, Witness(sp.states[i], path, cval, aval))
    return DominanceVerdict(True)


def strictly_dominated(s1: MealyStrategy, s2: MealyStrategy, g: GameGraph) -> bool:
    return (
        weakly_dominated(s1, s2, g).holds and not weakly_dominated(s2, s1, g).holds
    )


def equivalent(s1: MealyStrategy, s2: MealyStrategy, g: GameGraph) -> bool:
    """Mutual weak dominance."""
    return weakly_dominated(s1, s2, g).holds and weakly_dominated(s2, s1, g).holds


def is_witness_state(p: OnePlayerProduct, i: int) -> bool:
    values = solve(p.game)
    v = p.states[i][1]
    a, c = p.value(i, Mode.MIN), p.value(i, Mode.MAX)
    big_a, big_ac = values.aval[v], values.acval[v]
    return c <= big_a <= big_ac and (a < c or c < big_a or big_a < big_ac)


def is_good_state(p: OnePlayerProduct, i: int) -> bool:
    values = solve(p.game)
    v = p.states[i][1]
    return p.value(i, Mode.MIN) == values.aval[v] and p.value(i, Mode.MAX) == values.acval[v]


def witness_indices(p: OnePlayerProduct) -> list[int]:
    return [i for i in range(len(p)) if is_witness_state(p, i)]


def non_admissibility_witnesses(
    s: MealyStrategy, g: GameGraph
) -> list[tuple[Hashable, VertexId]]:
    """Reachable product states certifying that ``s`` is not admissible.

    Returned in BFS order; the list is empty iff ``s`` is admissible.
    """
    p = one_player_product(s, g)
    return [p.states[i] for i in witness_indices(p)]


def problematic_witnesses(p: OnePlayerProduct) -> list[int]:
    """Witnesses reachable without an earlier good visit of their vertex."""
    witnesses = witness_indices(p)
    by_vertex: dict[VertexId, list[int]] = {}
    for i in witnesses:
        by_vertex.setdefault(p.states[i][1], []).append(i)
    found: list[int] = []
    for v, targets in by_vertex.items():
        good = {i for i in range(len(p)) if p.states[i][1] == v and is_good_state(p, i)}
        if p.init in good:
            continue
        view = nx.restricted_view(p.graph, good, [])
        reach = nx.descendants(view, p.init) | {p.init}
        found.extend(i for i in targets if i in reach)
    return sorted(found)


def is_preadmissible(s: MealyStrategy, g: GameGraph) -> bool:
    """Every witness visit is preceded by a good visit of the same vertex.

    A visit is good when the strategy realizes both aVal and acVal there.
    """
    return not problematic_witnesses(one_player_product(s, g))


def check_admissibility(s: MealyStrategy, g: GameGraph) -> AdmissibilityVerdict:
    p = one_player_product(s, g)
    witnesses = [p.states[i] for i in witness_indices(p)]
    problematic = [p.states[i] for i in problematic_witnesses(p)]
    return AdmissibilityVerdict(
        admissible=not witnesses,
        witnesses=witnesses,
        preadmissible=not problematic,
        problematic=problematic,
    )


def is_admissible(s: MealyStrategy, g: GameGraph) -> bool:
    return not non_admissibility_witnesses(s, g)


def witness_history(p: OnePlayerProduct, state: tuple[Hashable, VertexId]) -> list[str]:
    """Vertex names along the BFS-first shortest access path to ``state``."""
    return [p.game.names[p.states[j][1]] for j in p.access_path(p.index[state])]


@dataclass(frozen=True)
class StrategyProfile:
    aval: int
    cval: int
    worst_case_optimal: bool
    cooperative_optimal: bool
    worst_case_cooperative_optimal: bool


def classify_strategy(s: MealyStrategy, g: GameGraph) -> StrategyProfile:
    """Optimality of ``s`` at the initial vertex."""
    check_game(s, g)
    p = one_player_product(s, g)
    values = solve(g)
    a, c = p.value(p.init, Mode.MIN), p.value(p.init, Mode.MAX)
    v = g.init
    return StrategyProfile(
        aval=a,
        cval=c,
        worst_case_optimal=a == values.aval[v],
        cooperative_optimal=c == values.cval[v],
        worst_case_cooperative_optimal=a == values.aval[v] and c == values.acval[v],
    )
