"""Game values and strategy values.

``solve`` computes, per vertex, the antagonistic value aVal (what the
protagonist can guarantee), the cooperative value cVal (what the players can
reach together) and the antagonistic-cooperative value acVal (the best
cooperative payoff among strategies that still guarantee aVal).

Strategy-relative values are read off a ``OnePlayerProduct``, the product of a
Mealy strategy with the arena, where only the antagonist still branches.
"""

import logging
from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import cached_property, lru_cache
from typing import Callable, Hashable, Iterable, Optional

import networkx as nx

from src.games.game_core import GameGraph, Player, VertexId

logger = logging.getLogger(__name__)


class Mode(str, Enum):
    MIN = "min"
    MAX = "max"


@dataclass(frozen=True)
class ValueTriple:
    aval: int
    cval: int
    acval: int


def attractor_ranks(
    g: GameGraph, player: Player, target: Iterable[VertexId]
) -> dict[VertexId, int]:
    """Least fixed point of the controlled-predecessor operator, with ranks.

    A vertex of rank r > 0 is attracted because of successors of rank < r.
    """
    ranks = {v: 0 for v in target}
    # antagonist-side vertices need all successors attracted
    missing = [len(succ) for succ in g.edges]
    queue = deque(ranks)
    while queue:
        w = queue.popleft()
        for u in g.predecessors[w]:
            if u in ranks:
                continue
            if g.owners[u] is player:
                ranks[u] = ranks[w] + 1
                queue.append(u)
            else:
                missing[u] -= 1
                if missing[u] == 0:
                    ranks[u] = ranks[w] + 1
                    queue.append(u)
    return ranks


def attractor(g: GameGraph, player: Player, target: Iterable[VertexId]) -> frozenset[VertexId]:
    return frozenset(attractor_ranks(g, player, target))


def _opponent(player: Player) -> Player:
    return Player.ANTAGONIST if player is Player.PROTAGONIST else Player.PROTAGONIST


def thresholds(g: GameGraph) -> list[int]:
    """Candidate values in descending order: leaf payoffs and 0."""
    return sorted({g.payoffs[v] for v in g.leaves} | {0}, reverse=True)


def winning_region(g: GameGraph, t: int) -> frozenset[VertexId]:
    """Vertices from which the protagonist can force a payoff of at least t."""
    if t > 0:
        good = [v for v in g.leaves if g.payoffs[v] >= t]
        return attractor(g, Player.PROTAGONIST, good)
    bad = [v for v in g.leaves if g.payoffs[v] < t]
    return frozenset(range(len(g))) - attractor(g, Player.ANTAGONIST, bad)


def outcome_extremes(
    graph: nx.DiGraph,
    payoff_of: Callable[[Hashable], Optional[int]],
    pick: Callable[[Iterable[int]], int],
    count_cycles: bool = True,
) -> dict[Hashable, Optional[int]]:
    """Min or max payoff over the plays starting at each node.

    Nodes with a payoff are absorbing. Every other play ends up in a cyclic
    strongly connected component and is worth 0; ``count_cycles=False`` drops
    those plays. ``None`` marks nodes with no counted play.
    """
    cond = nx.condensation(graph)
    best: dict[int, Optional[int]] = {}
    for c in reversed(list(nx.topological_sort(cond))):
        members = cond.nodes[c]["members"]
        found: list[int] = []
        if len(members) == 1:
            (node,) = members
            payoff = payoff_of(node)
            if payoff is not None:
                found.append(payoff)
            elif count_cycles and graph.has_edge(node, node):
                found.append(0)
        elif count_cycles:
            found.append(0)
        found.extend(best[d] for d in cond.successors(c) if best[d] is not None)
        best[c] = pick(found) if found else None
    mapping = cond.graph["mapping"]
    return {node: best[mapping[node]] for node in graph}


def antag_values(g: GameGraph) -> tuple[int, ...]:
    values: list[Optional[int]] = [None] * len(g)
    for t in thresholds(g):
        region = winning_region(g, t)
        for v in region:
            if values[v] is None:
                values[v] = t
        logger.debug("threshold %d: winning region of size %d", t, len(region))
        if all(x is not None for x in values):
            break
    return tuple(values)


def coop_values(g: GameGraph) -> tuple[int, ...]:
    table = outcome_extremes(g.graph, lambda v: g.payoffs[v], max)
    return tuple(table[v] for v in range(len(g)))


def antag_coop_values(g: GameGraph, avals: tuple[int, ...]) -> tuple[int, ...]:
    result: list[Optional[int]] = [None] * len(g)
    for t in set(avals):
        region = [u for u in range(len(g)) if avals[u] >= t]
        table = outcome_extremes(
            g.graph.subgraph(region),
            lambda v: g.payoffs[v],
            max,
            count_cycles=t <= 0,
        )
        for v in region:
            if avals[v] == t:
                result[v] = table[v]
    return tuple(result)


@dataclass(frozen=True)
class GameValues:
    aval: tuple[int, ...]
    cval: tuple[int, ...]
    acval: tuple[int, ...]

    def triple(self, v: VertexId) -> ValueTriple:
        return ValueTriple(self.aval[v], self.cval[v], self.acval[v])


@lru_cache(maxsize=128)
def solve(g: GameGraph) -> GameValues:
    """All three values of every vertex, memoized per game."""
    avals = antag_values(g)
    values = GameValues(avals, coop_values(g), antag_coop_values(g, avals))
    logger.debug("solved game with %d vertices", len(g))
    return values


def antag_value(g: GameGraph, v: VertexId) -> int:
    return solve(g).aval[v]


def coop_value(g: GameGraph, v: VertexId) -> int:
    return solve(g).cval[v]


def antag_coop_value(g: GameGraph, v: VertexId) -> int:
    return solve(g).acval[v]


State = tuple[Hashable, VertexId]


class OnePlayerProduct:
    """Reachable part of a strategy/arena product.

    States are ``(memory, vertex)`` pairs indexed in BFS order. Leaf states are
    absorbing. ``parents`` records the BFS tree for access paths.
    """

    def __init__(
        self,
        game: GameGraph,
        states: list[State],
        succ: list[tuple[int, ...]],
        parents: list[Optional[int]],
    ):
        self.game = game
        self.states = states
        self.succ = succ
        self.parents = parents
        self.index = {s: i for i, s in enumerate(states)}
        self.init = 0

    def __len__(self) -> int:
        return len(self.states)

    def payoff(self, i: int) -> Optional[int]:
        return self.game.payoffs[self.states[i][1]]

    @cached_property
    def graph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(range(len(self)))
        g.add_edges_from((i, j) for i, succ in enumerate(self.succ) for j in succ)
        return g

    @cached_property
    def memory_size(self) -> int:
        return len({m for m, _ in self.states})

    @cached_property
    def _tables(self) -> dict[Mode, dict[Hashable, Optional[int]]]:
        return {
            Mode.MIN: outcome_extremes(self.graph, self.payoff, min),
            Mode.MAX: outcome_extremes(self.graph, self.payoff, max),
        }

    def value(self, i: int, mode: Mode) -> int:
        return self._tables[mode][i]

    def access_path(self, i: int) -> list[int]:
        path = [i]
        while self.parents[path[-1]] is not None:
            path.append(self.parents[path[-1]])
        return path[::-1]


def product_values(p: OnePlayerProduct, s: State, mode: Mode) -> int:
    """aVal (``Mode.MIN``) or cVal (``Mode.MAX``) of the strategy at state s."""
    return p.value(p.index[s], mode)
