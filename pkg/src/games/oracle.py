"""Brute-force reference implementations and random instance generators.

Everything here is recomputed from the definitions: values by enumerating
strategies and evaluating lassos, dominance by unrolling histories. Only the
input types are shared with the rest of the package. The enumerations are
exponential and refuse instances beyond ``OracleGuards``.
"""

import logging
import random
from collections.abc import Hashable
from itertools import product
from math import prod
from typing import Optional

from pydantic import BaseModel

from src.config import GenConfig, OracleGuards
from src.games.automata import (
    MealyStrategy,
    ParamAutomaton,
    Rule,
    Step,
    TableMealy,
    render_mealy,
)
from src.games.dominance import weakly_dominated
from src.games.errors import InstanceTooLargeError
from src.games.game_core import GameGraph, Player, VertexId, render_game
from src.games.values import ValueTriple, solve

logger = logging.getLogger(__name__)

# strategies enumerated per instance before giving up
ENUMERATION_LIMIT = 200_000


def _guard(g: GameGraph, guards: OracleGuards) -> None:
    if len(g) > guards.max_vertices:
        raise InstanceTooLargeError(
            f"{len(g)} vertices exceed the oracle guard of {guards.max_vertices}"
        )


def _lasso_payoff(g: GameGraph, v: VertexId, choice: dict[VertexId, VertexId]) -> int:
    walk: list[VertexId] = []
    position: dict[VertexId, int] = {}
    while v not in position:
        position[v] = len(walk)
        walk.append(v)
        v = choice[v]
    for u in walk[position[v] :]:
        if g.is_leaf(u):
            return g.payoffs[u]
    return 0


def _positional(g: GameGraph, player: Player) -> list[dict[VertexId, VertexId]]:
    owned = [v for v in range(len(g)) if g.owners[v] is player]
    return [dict(zip(owned, pick)) for pick in product(*(g.edges[v] for v in owned))]


def _outcome_sets(
    succ: dict[Hashable, list[Hashable]], payoff: dict[Hashable, Optional[int]]
) -> dict[Hashable, frozenset[int]]:
    """Payoffs of all plays from each state of a one-player graph."""
    reach: dict[Hashable, set[Hashable]] = {}
    for start in succ:
        seen = {start}
        stack = [start]
        while stack:
            for y in succ[stack.pop()]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        reach[start] = seen
    cyclic = {
        x for x in succ if payoff[x] is None and any(x in reach[y] for y in succ[x])
    }
    result = {}
    for start, seen in reach.items():
        found = {payoff[x] for x in seen if payoff[x] is not None}
        if seen & cyclic:
            found.add(0)
        result[start] = frozenset(found)
    return result


def brute_value_table(
    g: GameGraph, guards: OracleGuards = OracleGuards()
) -> list[ValueTriple]:
    """Values of every vertex by exhaustive enumeration.

    aVal and cVal range over positional strategies of both players; acVal
    ranges over Mealy strategies with at most ``guards.memory_bound`` states.
    """
    _guard(g, guards)
    mine, theirs = _positional(g, Player.PROTAGONIST), _positional(g, Player.ANTAGONIST)
    if len(mine) * len(theirs) > ENUMERATION_LIMIT:
        raise InstanceTooLargeError("too many positional strategy pairs")

    n = len(g)
    aval = [None] * n
    cval = [None] * n
    for sigma in mine:
        worst = [None] * n
        for tau in theirs:
            choice = {**sigma, **tau}
            for v in range(n):
                pay = _lasso_payoff(g, v, choice)
                worst[v] = pay if worst[v] is None else min(worst[v], pay)
                cval[v] = pay if cval[v] is None else max(cval[v], pay)
        for v in range(n):
            aval[v] = worst[v] if aval[v] is None else max(aval[v], worst[v])

    acval = [None] * n
    k = guards.memory_bound
    inner = [v for v in range(n) if not g.is_leaf(v)]
    choosing = [v for v in inner if g.is_protagonist(v) and len(g.edges[v]) > 1]
    slots = [(m, v) for m in range(k) for v in inner]
    decisions = [(m, v) for m in range(k) for v in choosing]
    total = k ** len(slots) * prod(len(g.edges[v]) for _, v in decisions)
    if total > ENUMERATION_LIMIT:
        raise InstanceTooLargeError(f"{total} Mealy strategies exceed the oracle limit")

    for updates in product(range(k), repeat=len(slots)):
        update = dict(zip(slots, updates))
        for moves in product(*(g.edges[v] for _, v in decisions)):
            move = dict(zip(decisions, moves))
            succ: dict[Hashable, list[Hashable]] = {}
            payoff: dict[Hashable, Optional[int]] = {}
            for m in range(k):
                for v in range(n):
                    payoff[(m, v)] = g.payoffs[v]
                    if g.is_leaf(v):
                        succ[(m, v)] = [(m, v)]
                        continue
                    nxt = update[(m, v)]
                    if g.is_protagonist(v):
                        w = move.get((m, v), g.edges[v][0])
                        succ[(m, v)] = [(nxt, w)]
                    else:
                        succ[(m, v)] = [(nxt, w) for w in g.edges[v]]
            outcomes = _outcome_sets(succ, payoff)
            for v in range(n):
                found = outcomes[(0, v)]
                if min(found) == aval[v]:
                    best = max(found)
                    acval[v] = best if acval[v] is None else max(acval[v], best)

    return [ValueTriple(aval[v], cval[v], acval[v]) for v in range(n)]


def brute_values(
    g: GameGraph, v: VertexId, guards: OracleGuards = OracleGuards()
) -> ValueTriple:
    return brute_value_table(g, guards)[v]


def strategy_outcomes(s: MealyStrategy, g: GameGraph, start: tuple) -> frozenset[int]:
    succ: dict[Hashable, list[Hashable]] = {}
    payoff: dict[Hashable, Optional[int]] = {}
    stack = [start]
    while stack:
        state = stack.pop()
        if state in succ:
            continue
        m, v = state
        payoff[state] = g.payoffs[v]
        if g.is_leaf(v):
            succ[state] = [state]
            continue
        nxt, move = s.step(m, v)
        targets = [move] if g.is_protagonist(v) else list(g.edges[v])
        succ[state] = [(nxt, w) for w in targets]
        stack.extend(succ[state])
    return _outcome_sets(succ, payoff)[start]


def brute_dominance(
    s1: MealyStrategy,
    s2: MealyStrategy,
    g: GameGraph,
    guards: OracleGuards = OracleGuards(),
) -> bool:
    """Weak dominance of ``s1`` by ``s2`` from unrolled common histories."""
    _guard(g, guards)
    frontier = [(s1.init, g.init, s2.init)]
    seen = set(frontier)
    while frontier:
        layer = []
        for m1, v, m2 in frontier:
            if g.is_leaf(v):
                continue
            a, b = s1.step(m1, v), s2.step(m2, v)
            if g.is_protagonist(v) and a.move != b.move:
                hope = max(strategy_outcomes(s1, g, (m1, v)))
                guarantee = min(strategy_outcomes(s2, g, (m2, v)))
                if hope > guarantee:
                    return False
                continue
            targets = [a.move] if g.is_protagonist(v) else g.edges[v]
            for w in targets:
                nxt = (a.target, w, b.target)
                if nxt not in seen:
                    seen.add(nxt)
                    layer.append(nxt)
        frontier = layer
    return True


def gen_random_game(cfg: GenConfig) -> GameGraph:
    """Random arena; a pure function of ``cfg``."""
    rng = random.Random(f"{cfg.seed}/game")
    n, leaves = cfg.vertex_count, cfg.leaf_count
    inner = n - leaves
    names = [f"v{i}" for i in range(inner)] + [f"l{i}" for i in range(leaves)]
    owners = [rng.choice([Player.PROTAGONIST, Player.ANTAGONIST]) for _ in names]
    payoffs = [None] * inner + [rng.randint(*cfg.payoff_range) for _ in range(leaves)]
    edges = []
    for v in range(n):
        if v >= inner:
            edges.append((v,))
        else:
            degree = rng.randint(1, min(cfg.max_out_degree, n))
            edges.append(tuple(rng.sample(range(n), degree)))
    return GameGraph(tuple(names), tuple(owners), tuple(edges), tuple(payoffs), 0)


def gen_random_mealy(cfg: GenConfig, g: GameGraph, salt: str = "") -> TableMealy:
    rng = random.Random(f"{cfg.seed}/mealy/{salt}")
    states = [f"q{i}" for i in range(cfg.mealy_states)]
    rows = {}
    for m in states:
        for v in range(len(g)):
            if g.is_leaf(v):
                continue
            move = rng.choice(g.edges[v]) if g.is_protagonist(v) else None
            rows[(m, v)] = Step(rng.choice(states), move)
    return TableMealy(g, states, states[0], rows)


def gen_random_param(cfg: GenConfig, g: GameGraph, salt: str = "") -> ParamAutomaton:
    rng = random.Random(f"{cfg.seed}/param/{salt}")
    states = [f"r{i}" for i in range(cfg.param_states)]

    def random_step(v: VertexId) -> Step:
        move = rng.choice(g.edges[v]) if g.is_protagonist(v) else None
        return Step(rng.choice(states), move)

    rules = {}
    for m in states:
        for v in range(len(g)):
            if g.is_leaf(v):
                continue
            if rng.random() < 0.3:
                rules[(m, v)] = Rule(green=random_step(v), red=random_step(v))
            else:
                rules[(m, v)] = Rule(black=random_step(v))
    return ParamAutomaton(g, states, states[0], rules)


def lollipop_game(size: int) -> GameGraph:
    """Antagonist corridor of ``size - 4`` vertices into the Help-me? loop."""
    if size < 4:
        raise ValueError("a lollipop needs at least 4 vertices")
    stick = size - 4
    names = [f"s{i}" for i in range(stick)] + ["v0", "v1", "l1", "l2"]
    v0, v1, l1, l2 = stick, stick + 1, stick + 2, stick + 3
    owners = [Player.ANTAGONIST] * stick + [
        Player.PROTAGONIST,
        Player.ANTAGONIST,
        Player.ANTAGONIST,
        Player.ANTAGONIST,
    ]
    edges = [(i + 1,) for i in range(stick)] + [(v1, l1), (v0, l2), (l1,), (l2,)]
    payoffs = [None] * (stick + 2) + [1, 2]
    return GameGraph(tuple(names), tuple(owners), tuple(edges), tuple(payoffs), 0)


def lollipop_chain(g: GameGraph) -> ParamAutomaton:
    """One-state automaton looping at v0 while the counter lasts."""
    v0, v1, l1 = g.vertex("v0"), g.vertex("v1"), g.vertex("l1")
    rules = {("m", v0): Rule(green=Step("m", v1), red=Step("m", l1))}
    return ParamAutomaton(g, ["m"], "m", rules)


class CorpusReport(BaseModel):
    seed: int
    instances: int = 0
    value_checks: int = 0
    value_mismatches: int = 0
    dominance_checks: int = 0
    dominance_mismatches: int = 0
    counterexample: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.value_mismatches == 0 and self.dominance_mismatches == 0


def _serialize(g: GameGraph, *strategies: TableMealy) -> str:
    parts = ["# game", render_game(g)]
    for k, s in enumerate(strategies, start=1):
        parts += [f"# strategy {k}", render_mealy(s)]
    return "\n".join(parts)


def run_corpus(
    cfg: GenConfig, count: int, guards: OracleGuards = OracleGuards()
) -> CorpusReport:
    """Compare the solver with the oracle on ``count`` consecutive seeds."""
    report = CorpusReport(seed=cfg.seed)
    for i in range(count):
        local = cfg.model_copy(update={"seed": cfg.seed + i})
        g = gen_random_game(local)
        s1 = gen_random_mealy(local, g, "a")
        s2 = gen_random_mealy(local, g, "b")
        report.instances += 1

        expected = brute_value_table(g, guards)
        actual = solve(g)
        for v in range(len(g)):
            report.value_checks += 1
            if actual.triple(v) != expected[v]:
                report.value_mismatches += 1
                logger.warning("value mismatch at seed %d, vertex %s", local.seed, g.names[v])
                report.counterexample = report.counterexample or _serialize(g)

        for a, b in ((s1, s2), (s2, s1), (s1, s1)):
            report.dominance_checks += 1
            if weakly_dominated(a, b, g).holds != brute_dominance(a, b, g, guards):
                report.dominance_mismatches += 1
                logger.warning("dominance mismatch at seed %d", local.seed)
                report.counterexample = report.counterexample or _serialize(g, a, b)
    return report
