"""Strategy synthesis: optimal strategies, preadmissibilization, improvement.

``improve_to_maximal`` turns any Mealy strategy into either an admissible
strategy or a parameterized automaton realizing a maximal uniform chain, both
dominating the input.
"""

import logging
from collections import deque
from collections.abc import Hashable
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Optional, Union

import networkx as nx

from src.games.automata import (
    MealyStrategy,
    ParamAutomaton,
    Rule,
    Step,
    TableMealy,
    check_game,
    default_move,
    materialize,
    one_player_product,
    state_name,
)
from src.games.dominance import is_good_state, problematic_witnesses, witness_indices
from src.games.errors import SynthesisError
from src.games.game_core import GameGraph, VertexId
from src.games.values import Mode, attractor_ranks, solve

logger = logging.getLogger(__name__)

WORST_CASE_STATE = "wc"


@lru_cache(maxsize=128)
def worst_case_moves(g: GameGraph) -> dict[VertexId, VertexId]:
    """Positional worst-case optimal move at every protagonist vertex.

    Above 0 the move descends the attractor ranks of the vertex's own value;
    at or below 0 it stays among successors of at least the same value.
    """
    values = solve(g)
    ranks_by_value: dict[int, dict[VertexId, int]] = {}
    moves: dict[VertexId, VertexId] = {}
    for u in range(len(g)):
        if not g.is_protagonist(u):
            continue
        t = values.aval[u]
        if g.is_leaf(u) or len(g.edges[u]) == 1:
            moves[u] = g.edges[u][0]
        elif t > 0:
            if t not in ranks_by_value:
                good = [v for v in g.leaves if g.payoffs[v] >= t]
                ranks_by_value[t] = attractor_ranks(g, g.owners[u], good)
            ranks = ranks_by_value[t]
            moves[u] = next(
                w for w in g.edges[u] if w in ranks and ranks[w] < ranks[u]
            )
        else:
            moves[u] = next(w for w in g.edges[u] if values.aval[w] >= t)
    return moves


def _wc_step(g: GameGraph, v: VertexId) -> Step:
    return Step(WORST_CASE_STATE, worst_case_moves(g).get(v))


def synth_worst_case_optimal(g: GameGraph, v: Optional[VertexId] = None) -> TableMealy:
    """One-state strategy realizing aVal from every vertex it visits.

    The construction is global, so ``v`` only names the intended start.
    """
    rows = {(WORST_CASE_STATE, u): _wc_step(g, u) for u in range(len(g))}
    return TableMealy(g, [WORST_CASE_STATE], WORST_CASE_STATE, rows)


def _cooperative_route(
    g: GameGraph, v: VertexId, region: set[VertexId], goal: int
) -> tuple[list[VertexId], int]:
    """BFS-shortest route from ``v`` inside ``region`` to a play worth ``goal``.

    Returns the vertex sequence and the position the route loops back to,
    which is the last position for routes ending in a leaf.
    """

    def bfs(is_target) -> Optional[list[VertexId]]:
        parent: dict[VertexId, Optional[VertexId]] = {v: None}
        queue = deque([v])
        while queue:
            u = queue.popleft()
            if is_target(u):
                route = [u]
                while parent[route[-1]] is not None:
                    route.append(parent[route[-1]])
                return route[::-1]
            for w in g.edges[u]:
                if w in region and w not in parent:
                    parent[w] = u
                    queue.append(w)
        return None

    route = bfs(lambda u: g.is_leaf(u) and g.payoffs[u] == goal)
    if route is not None:
        return route, len(route) - 1
    if goal != 0:
        raise SynthesisError(f"no route to payoff {goal} from {g.names[v]}")
    # payoff 0 through a cycle of non-leaf vertices inside the region
    inner = g.graph.subgraph(u for u in region if not g.is_leaf(u))
    cyclic = {
        u
        for comp in nx.strongly_connected_components(inner)
        for u in comp
        if len(comp) > 1 or inner.has_edge(u, u)
    }
    route = bfs(lambda u: u in cyclic)
    if route is None:
        raise SynthesisError(f"no cooperative route from {g.names[v]}")
    entry = route[-1]
    back = next(w for w in g.edges[entry] if w in inner and nx.has_path(inner, w, entry))
    cycle = nx.shortest_path(inner, back, entry)
    return route + cycle, len(route)


def _route_strategy(g: GameGraph, route: list[VertexId], loop: int) -> TableMealy:
    """Follow ``route`` and play worst-case optimal once the antagonist leaves it."""
    names = [f"p{k}" for k in range(len(route))]
    states = names + [WORST_CASE_STATE]
    rows: dict[tuple[str, VertexId], Step] = {}
    for k, name in enumerate(names):
        nxt = k + 1 if k + 1 < len(route) else loop
        for u in range(len(g)):
            if u == route[k]:
                move = route[nxt] if g.is_protagonist(u) else None
                if g.is_leaf(u):
                    move = default_move(g, u)
                rows[(name, u)] = Step(names[nxt], move)
            else:
                rows[(name, u)] = _wc_step(g, u)
    for u in range(len(g)):
        rows[(WORST_CASE_STATE, u)] = _wc_step(g, u)
    return TableMealy(g, states, names[0], rows)


def synth_wco(g: GameGraph, v: VertexId) -> TableMealy:
    """Strategy realizing aVal(v) and acVal(v) from ``v``.

    It follows a cooperative route inside the region of vertices worth at
    least aVal(v) and falls back to the worst-case optimal strategy as soon
    as the antagonist leaves the route.
    """
    values = solve(g)
    t = values.aval[v]
    region = {u for u in range(len(g)) if values.aval[u] >= t}
    route, loop = _cooperative_route(g, v, region, values.acval[v])
    return _route_strategy(g, route, loop)


def synth_cooperative_optimal(g: GameGraph, v: VertexId) -> TableMealy:
    """Strategy realizing cVal(v) from ``v``, ignoring what it guarantees."""
    route, loop = _cooperative_route(g, v, set(range(len(g))), solve(g).cval[v])
    return _route_strategy(g, route, loop)


def _copy_strategy(target: dict, states: list[str], s: TableMealy, prefix: str) -> str:
    """Add the rows of ``s`` under renamed states; return the renamed init."""
    for m in s.states:
        states.append(f"{prefix}{m}")
    for (m, u), step in s.rows.items():
        target[(f"{prefix}{m}", u)] = Step(f"{prefix}{step.target}", step.move)
    return f"{prefix}{s.init}"


def preadmissibilize(s: MealyStrategy, g: GameGraph) -> MealyStrategy:
    """Preadmissible strategy weakly dominating ``s``.

    Each problematic witness ``(m, v)`` is rewired to behave as the
    worst-case cooperative optimal strategy of ``v`` from then on.
    """
    check_game(s, g)
    if not problematic_witnesses(one_player_product(s, g)):
        return s
    table = materialize(s)
    states = list(table.states)
    rows = {key: table.step(*key) for key in ((m, u) for m in table.states for u in range(len(g)))}
    entries: dict[VertexId, str] = {}
    for round_ in range(len(g) + 1):
        current = TableMealy(g, states, table.init, rows)
        p = one_player_product(current, g)
        bad = problematic_witnesses(p)
        if not bad:
            logger.debug("preadmissible after %d rounds", round_)
            return current
        for i in bad:
            m, v = p.states[i]
            if v not in entries:
                tau = synth_wco(g, v)
                entries[v] = _copy_strategy(rows, states, tau, f"{g.names[v]}~")
            # enter the copy of the route strategy exactly as it would at v
            step = rows[(entries[v], v)]
            rows[(m, v)] = step
            logger.debug("rewired (%s, %s)", m, g.names[v])
    raise SynthesisError(f"still not preadmissible after {len(g) + 1} rounds")


class ResultKind(str, Enum):
    SINGLE = "single"
    CHAIN = "chain"


@dataclass(frozen=True)
class ImprovementResult:
    kind: ResultKind
    strategy: Union[TableMealy, ParamAutomaton]
    rewired_states: list[tuple[str, str]] = field(default_factory=list)


def improve_to_maximal(s: MealyStrategy, g: GameGraph) -> ImprovementResult:
    """Admissible strategy or maximal uniform chain dominating ``s``.

    Memory is extended with the state of the first good visit of every vertex
    carrying a witness. At a witness the automaton then replays that earlier
    visit: unconditionally when its guaranteed value is at most 0, otherwise
    only while the counter lasts.
    """
    check_game(s, g)
    base = preadmissibilize(s, g)
    p = one_player_product(base, g)
    witnesses = witness_indices(p)
    if not witnesses:
        table = base if isinstance(base, TableMealy) else materialize(base)
        return ImprovementResult(ResultKind.SINGLE, table)

    witness_states = {p.states[i] for i in witnesses}
    tracked = sorted({v for _, v in witness_states})
    slot = {v: k for k, v in enumerate(tracked)}
    good = {p.states[i] for i in range(len(p)) if is_good_state(p, i)}

    def record(m, rec, v):
        k = slot.get(v)
        if k is None or rec[k] is not None or (m, v) not in good:
            return rec
        return rec[:k] + (m,) + rec[k + 1 :]

    def rule_for(memory, v) -> tuple[Rule, bool]:
        m, rec = memory
        if g.is_leaf(v):
            return Rule(black=Step(memory, default_move(g, v))), False
        rec2 = record(m, rec, v)
        own = base.step(m, v)
        own_step = Step((own.target, rec2), own.move)
        prior = rec2[slot[v]] if v in slot else None
        if (m, v) not in witness_states or prior is None or prior == m:
            return Rule(black=own_step), False
        theirs = base.step(prior, v)
        prior_step = Step((theirs.target, rec2), theirs.move)
        if p.value(p.index[(prior, v)], Mode.MIN) <= 0:
            return Rule(black=prior_step), True
        return Rule(green=prior_step, red=own_step), True

    init = (base.init, (None,) * len(tracked))
    order = [init]
    seen_states = {init}
    reached: dict[tuple[Hashable, VertexId], Rule] = {}
    rewired: list[tuple[Hashable, VertexId]] = []
    queue = deque([(init, g.init)])
    visited = {(init, g.init)}
    while queue:
        memory, v = queue.popleft()
        rule, changed = rule_for(memory, v)
        reached[(memory, v)] = rule
        if changed:
            rewired.append((memory, v))
        if g.is_leaf(v):
            continue
        for _, step in rule.colored_steps():
            if step.target not in seen_states:
                seen_states.add(step.target)
                order.append(step.target)
            targets = (step.move,) if g.is_protagonist(v) else g.edges[v]
            for w in targets:
                if (step.target, w) not in visited:
                    visited.add((step.target, w))
                    queue.append((step.target, w))

    names = {memory: state_name(memory) for memory in order}
    if len(set(names.values())) != len(names):
        names = {memory: f"s{k}" for k, memory in enumerate(order)}

    def renamed(step: Step) -> Step:
        return Step(names[step.target], step.move)

    rules: dict[tuple[str, VertexId], Rule] = {}
    for memory in order:
        for v in range(len(g)):
            rule = reached.get((memory, v))
            if rule is None:
                # unreachable pair: any valid row will do
                move = base.move(memory[0], v) if g.is_protagonist(v) else None
                rules[(names[memory], v)] = Rule(black=Step(names[memory], move))
            else:
                rules[(names[memory], v)] = Rule(
                    **{c.value: renamed(st) for c, st in rule.colored_steps()}
                )
    report = [(names[memory], g.names[v]) for memory, v in rewired]
    has_test = any(rule.is_test for rule in reached.values())
    automaton = ParamAutomaton(g, [names[m] for m in order], names[init], rules)
    logger.debug("improvement rewired %d states, chain=%s", len(report), has_test)
    if not has_test:
        strategy = TableMealy(
            g,
            automaton.states,
            automaton.init,
            {key: rule.black for key, rule in automaton.rules.items()},
        )
        return ImprovementResult(ResultKind.SINGLE, strategy, report)
    return ImprovementResult(ResultKind.CHAIN, automaton, report)
