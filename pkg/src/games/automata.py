"""Mealy strategies, parameterized automata and their products with an arena.

A Mealy strategy reads the current vertex, updates its memory and, at
protagonist vertices, outputs the next vertex. A parameterized automaton adds
a single counter: at a counter-test pair ``(state, vertex)`` the green rule is
taken while the counter is positive (and decrements it), the red rule once it
is zero. Instantiating the counter with ``n`` yields the ``n``-th strategy of
the chain the automaton realizes.

Leaf vertices are absorbing in every product built here; the payoff of a play
is fixed once it reaches a leaf, so memory updates there are irrelevant.
"""

import logging
from abc import ABC, abstractmethod
from collections.abc import Hashable, Mapping, Sequence
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import NamedTuple, Optional

import networkx as nx

from src.games.errors import (
    AutomatonFormatError,
    AutomatonValidationError,
    GameMismatchError,
    InvalidPathError,
)
from src.games.game_core import GameGraph, VertexId
from src.games.values import OnePlayerProduct

logger = logging.getLogger(__name__)


class Color(str, Enum):
    BLACK = "black"
    GREEN = "green"
    RED = "red"


class Step(NamedTuple):
    target: Hashable
    move: Optional[VertexId]


def default_move(g: GameGraph, v: VertexId) -> Optional[VertexId]:
    """The forced move at ``v``, if there is one."""
    if g.is_protagonist(v) and len(g.edges[v]) == 1:
        return g.edges[v][0]
    return None


def _needs_move(g: GameGraph, v: VertexId) -> bool:
    return g.is_protagonist(v) and len(g.edges[v]) > 1


def _check_step(g: GameGraph, where: str, v: VertexId, step: Step) -> Step:
    if step.move is None:
        if _needs_move(g, v):
            raise AutomatonValidationError(f"{where}: missing move at {g.names[v]}")
        return Step(step.target, default_move(g, v))
    if not g.is_protagonist(v):
        raise AutomatonValidationError(
            f"{where}: move given at antagonist vertex {g.names[v]}"
        )
    if step.move not in g.edges[v]:
        raise AutomatonValidationError(
            f"{where}: {g.names[step.move]} is not a successor of {g.names[v]}"
        )
    return step


class MealyStrategy(ABC):
    """Finite-memory protagonist strategy bound to one game."""

    game: GameGraph
    init: Hashable

    @abstractmethod
    def step(self, m: Hashable, v: VertexId) -> Step:
        """Memory update and move on reading ``v`` in memory ``m``."""

    def update(self, m: Hashable, v: VertexId) -> Hashable:
        return self.step(m, v).target

    def move(self, m: Hashable, v: VertexId) -> Optional[VertexId]:
        return self.step(m, v).move


class TableMealy(MealyStrategy):
    """Mealy strategy given by an explicit transition table.

    Pairs without a row keep the memory and play the forced move; every
    protagonist vertex with a real choice needs a row in every state.
    """

    def __init__(
        self,
        game: GameGraph,
        states: Sequence[str],
        init: str,
        rows: Mapping[tuple[str, VertexId], Step],
    ):
        self.game = game
        self.states = tuple(states)
        self.init = init
        known = set(self.states)
        if init not in known:
            raise AutomatonValidationError(f"init state {init!r} is not declared")
        checked: dict[tuple[str, VertexId], Step] = {}
        for (m, v), step in rows.items():
            where = f"state {m}, vertex {game.names[v]}"
            if m not in known or step.target not in known:
                raise AutomatonValidationError(f"{where}: unknown state")
            checked[(m, v)] = _check_step(game, where, v, step)
        for m in self.states:
            for v in range(len(game)):
                if (m, v) not in checked and _needs_move(game, v):
                    raise AutomatonValidationError(
                        f"state {m} has no move at {game.names[v]}"
                    )
        self.rows = checked

    def step(self, m: Hashable, v: VertexId) -> Step:
        row = self.rows.get((m, v))
        if row is None:
            return Step(m, default_move(self.game, v))
        return row


@dataclass(frozen=True)
class Rule:
    """Either a single black step or a green/red pair on a counter test."""

    black: Optional[Step] = None
    green: Optional[Step] = None
    red: Optional[Step] = None

    @property
    def is_test(self) -> bool:
        return self.black is None

    def colored_steps(self) -> list[tuple[Color, Step]]:
        if self.is_test:
            return [(Color.GREEN, self.green), (Color.RED, self.red)]
        return [(Color.BLACK, self.black)]


class ParamAutomaton:
    """Counter-extended Mealy machine with green/red/black rules."""

    def __init__(
        self,
        game: GameGraph,
        states: Sequence[str],
        init: str,
        rules: Mapping[tuple[str, VertexId], Rule],
    ):
        self.game = game
        self.states = tuple(states)
        self.init = init
        known = set(self.states)
        if init not in known:
            raise AutomatonValidationError(f"init state {init!r} is not declared")
        checked: dict[tuple[str, VertexId], Rule] = {}
        for (m, v), rule in rules.items():
            where = f"state {m}, vertex {game.names[v]}"
            if m not in known:
                raise AutomatonValidationError(f"{where}: unknown state")
            black_only = rule.black is not None and rule.green is None and rule.red is None
            test_pair = rule.black is None and rule.green is not None and rule.red is not None
            if not (black_only or test_pair):
                raise AutomatonValidationError(
                    f"{where}: need one black rule or one green and one red rule"
                )
            steps = {}
            for color, step in rule.colored_steps():
                if step.target not in known:
                    raise AutomatonValidationError(f"{where}: unknown state")
                steps[color.value] = _check_step(game, where, v, step)
            checked[(m, v)] = Rule(**steps)
        for m in self.states:
            for v in range(len(game)):
                if (m, v) not in checked and _needs_move(game, v):
                    raise AutomatonValidationError(
                        f"state {m} has no move at {game.names[v]}"
                    )
        self.rules = checked

    def rule(self, m: Hashable, v: VertexId) -> Rule:
        rule = self.rules.get((m, v))
        if rule is None:
            return Rule(black=Step(m, default_move(self.game, v)))
        return rule

    @cached_property
    def size(self) -> int:
        """Automaton states occurring in the reachable colored product."""
        return colored_product(self, self.game).memory_size


class InstantiatedMealy(MealyStrategy):
    """The strategy a parameterized automaton realizes with counter ``n``.

    Memory states are ``(counter, state)`` pairs, explored lazily, so only the
    reachable part ever exists.
    """

    def __init__(self, automaton: ParamAutomaton, n: int):
        self.automaton = automaton
        self.game = automaton.game
        self.n = n
        self.init = (n, automaton.init)

    def step(self, m: Hashable, v: VertexId) -> Step:
        counter, state = m
        rule = self.automaton.rule(state, v)
        if not rule.is_test:
            target, move = rule.black
            return Step((counter, target), move)
        if counter > 0:
            target, move = rule.green
            return Step((counter - 1, target), move)
        target, move = rule.red
        return Step((0, target), move)


def instantiate(p: ParamAutomaton, n: int) -> InstantiatedMealy:
    if n < 0:
        raise ValueError(f"counter value must be non-negative, got {n}")
    return InstantiatedMealy(p, n)


def state_name(m: Hashable) -> str:
    if isinstance(m, str):
        return m
    if isinstance(m, tuple):
        if len(m) == 2 and isinstance(m[0], int) and isinstance(m[1], str):
            return f"{m[1]}@{m[0]}"
        return "/".join(state_name(x) for x in m)
    return str(m)


def materialize(s: MealyStrategy) -> TableMealy:
    """Explicit table of ``s`` over the memory states reachable from ``init``."""
    g = s.game
    order = [s.init]
    seen = {s.init}
    steps: dict[tuple[Hashable, VertexId], Step] = {}
    i = 0
    while i < len(order):
        m = order[i]
        for v in range(len(g)):
            step = s.step(m, v)
            steps[(m, v)] = step
            if step.target not in seen:
                seen.add(step.target)
                order.append(step.target)
        i += 1
    names = {m: state_name(m) for m in order}
    if len(set(names.values())) != len(names):
        names = {m: f"s{k}" for k, m in enumerate(order)}
    rows = {
        (names[m], v): Step(names[step.target], step.move)
        for (m, v), step in steps.items()
        if step.target != m or step.move != default_move(g, v)
    }
    return TableMealy(g, [names[m] for m in order], names[s.init], rows)


def check_game(automaton, g: GameGraph) -> None:
    if automaton.game is not g and automaton.game != g:
        raise GameMismatchError("automaton is bound to a different game")


def one_player_product(
    s: MealyStrategy, g: GameGraph, start: Optional[VertexId] = None
) -> OnePlayerProduct:
    """Reachable product of ``s`` with ``g`` from ``(init, start)``.

    ``start`` defaults to the initial vertex of the game.
    """
    check_game(s, g)
    first = (s.init, g.init if start is None else start)
    states = [first]
    index = {first: 0}
    parents: list[Optional[int]] = [None]
    succ: list[tuple[int, ...]] = []
    i = 0
    while i < len(states):
        m, v = states[i]
        if g.is_leaf(v):
            nexts = [(m, v)]
        else:
            step = s.step(m, v)
            targets = (step.move,) if g.is_protagonist(v) else g.edges[v]
            nexts = [(step.target, w) for w in targets]
        ids = []
        for nxt in nexts:
            j = index.get(nxt)
            if j is None:
                j = index[nxt] = len(states)
                states.append(nxt)
                parents.append(i)
            ids.append(j)
        succ.append(tuple(ids))
        i += 1
    logger.debug("one-player product with %d states", len(states))
    return OnePlayerProduct(g, states, succ, parents)


class SyncProduct:
    """Synchronized run of two strategies against a common antagonist.

    States are ``(m1, v, m2)`` triples indexed in BFS order. A protagonist
    state where the two moves differ is a divergence and has no successor.
    """

    def __init__(self, game, states, succ, parents, divergences):
        self.game = game
        self.states: list[tuple[Hashable, VertexId, Hashable]] = states
        self.succ: list[tuple[int, ...]] = succ
        self.parents: list[Optional[int]] = parents
        self.divergences: list[int] = divergences
        self.index = {s: i for i, s in enumerate(states)}

    def __len__(self) -> int:
        return len(self.states)

    def access_path(self, i: int) -> list[int]:
        path = [i]
        while self.parents[path[-1]] is not None:
            path.append(self.parents[path[-1]])
        return path[::-1]


def sync_product(s1: MealyStrategy, g: GameGraph, s2: MealyStrategy) -> SyncProduct:
    check_game(s1, g)
    check_game(s2, g)
    first = (s1.init, g.init, s2.init)
    states = [first]
    index = {first: 0}
    parents: list[Optional[int]] = [None]
    succ: list[tuple[int, ...]] = []
    divergences: list[int] = []
    i = 0
    while i < len(states):
        m1, v, m2 = states[i]
        if g.is_leaf(v):
            nexts = [(m1, v, m2)]
        else:
            a, b = s1.step(m1, v), s2.step(m2, v)
            if g.is_protagonist(v) and a.move != b.move:
                divergences.append(i)
                nexts = []
            else:
                targets = (a.move,) if g.is_protagonist(v) else g.edges[v]
                nexts = [(a.target, w, b.target) for w in targets]
        ids = []
        for nxt in nexts:
            j = index.get(nxt)
            if j is None:
                j = index[nxt] = len(states)
                states.append(nxt)
                parents.append(i)
            ids.append(j)
        succ.append(tuple(ids))
        i += 1
    logger.debug(
        "sync product with %d states, %d divergences", len(states), len(divergences)
    )
    return SyncProduct(g, states, succ, parents, divergences)


@dataclass(frozen=True)
class ColoredEdge:
    src: tuple[Hashable, VertexId]
    dst: tuple[Hashable, VertexId]
    color: Color


class ColoredProduct:
    """Product of a parameterized automaton with the arena, counter ignored."""

    def __init__(self, game, states, edges):
        self.game = game
        self.states: list[tuple[Hashable, VertexId]] = states
        self.edges: list[ColoredEdge] = edges
        self.index = {s: i for i, s in enumerate(states)}
        self.init = states[0]

    def __len__(self) -> int:
        return len(self.states)

    @cached_property
    def edge_set(self) -> frozenset[ColoredEdge]:
        return frozenset(self.edges)

    @cached_property
    def memory_size(self) -> int:
        return len({m for m, _ in self.states})

    @cached_property
    def graph(self) -> nx.MultiDiGraph:
        g = nx.MultiDiGraph()
        g.add_nodes_from(self.states)
        for e in self.edges:
            g.add_edge(e.src, e.dst, color=e.color)
        return g

    def out_edges(self, state) -> list[ColoredEdge]:
        return [e for e in self.edges if e.src == state]


def colored_product(p: ParamAutomaton, g: GameGraph) -> ColoredProduct:
    check_game(p, g)
    first = (p.init, g.init)
    states = [first]
    seen = {first}
    edges: list[ColoredEdge] = []
    i = 0
    while i < len(states):
        m, v = states[i]
        if g.is_leaf(v):
            out = [ColoredEdge((m, v), (m, v), Color.BLACK)]
        else:
            out = []
            for color, step in p.rule(m, v).colored_steps():
                targets = (step.move,) if g.is_protagonist(v) else g.edges[v]
                out.extend(ColoredEdge((m, v), (step.target, w), color) for w in targets)
        for e in out:
            if e.dst not in seen:
                seen.add(e.dst)
                states.append(e.dst)
        edges.extend(out)
        i += 1
    return ColoredProduct(g, states, edges)


class PathCheck(NamedTuple):
    valid: bool
    greens: int
    reds: int


def path_colors(cp: ColoredProduct, path: Sequence[ColoredEdge]) -> list[Color]:
    """Colors along ``path``, which must be a path of ``cp``."""
    for k, edge in enumerate(path):
        if edge not in cp.edge_set:
            raise InvalidPathError(f"edge {k} is not an edge of the product")
        if k and path[k - 1].dst != edge.src:
            raise InvalidPathError(f"edge {k} does not continue the path")
    return [e.color for e in path]


def is_valid_path(colors: Sequence[Color]) -> PathCheck:
    """A finite path is valid iff no green edge follows a red one."""
    greens = reds = 0
    valid = True
    for color in colors:
        if color is Color.GREEN:
            greens += 1
            if reds:
                valid = False
        elif color is Color.RED:
            reds += 1
    return PathCheck(valid, greens, reds)


def compatible(reds: int, greens: int, k: int) -> bool:
    """Whether counter value ``k`` realizes a valid path with these counts."""
    if reds == 0:
        return k >= greens
    return k == greens


def _parse_automaton(text: str, game: GameGraph, colored: bool):
    states: list[str] = []
    init: Optional[str] = None
    transitions = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        kind, *args = line.split()
        if kind == "state":
            if not args or len(args) > 2 or (len(args) == 2 and args[1] != "init"):
                raise AutomatonFormatError(lineno, "expected: state <name> [init]")
            if args[0] in states:
                raise AutomatonFormatError(lineno, f"state {args[0]!r} declared twice")
            states.append(args[0])
            if len(args) == 2:
                if init is not None:
                    raise AutomatonFormatError(lineno, "more than one init state")
                init = args[0]
        elif kind == "trans":
            if len(args) < 4 or args[2] != "->":
                raise AutomatonFormatError(
                    lineno, "expected: trans <state> <vertex> -> <state> [attrs]"
                )
            src, vertex, _, dst, *rest = args
            attrs: dict[str, str] = {}
            for tok in rest:
                key, sep, value = tok.partition("=")
                if not sep or key not in ("move", "color") or key in attrs:
                    raise AutomatonFormatError(lineno, f"bad attribute {tok!r}")
                attrs[key] = value
            if colored and "color" not in attrs:
                raise AutomatonFormatError(lineno, "missing color=<black|green|red>")
            if not colored and "color" in attrs:
                raise AutomatonFormatError(lineno, "colors belong to parameterized automata")
            color = Color.BLACK
            if colored:
                try:
                    color = Color(attrs["color"])
                except ValueError:
                    raise AutomatonFormatError(lineno, f"bad color {attrs['color']!r}") from None
            if vertex not in game.index:
                raise AutomatonValidationError(f"line {lineno}: unknown vertex {vertex!r}")
            move = attrs.get("move")
            if move is not None and move not in game.index:
                raise AutomatonValidationError(f"line {lineno}: unknown vertex {move!r}")
            transitions.append(
                (
                    lineno,
                    src,
                    game.index[vertex],
                    Step(dst, None if move is None else game.index[move]),
                    color,
                )
            )
        else:
            raise AutomatonFormatError(lineno, f"unknown directive {kind!r}")
    if init is None:
        raise AutomatonValidationError("no init state")
    for lineno, src, _, step, _ in transitions:
        for state in (src, step.target):
            if state not in states:
                raise AutomatonValidationError(f"line {lineno}: unknown state {state!r}")
    return states, init, transitions


def parse_mealy(text: str, game: GameGraph) -> TableMealy:
    """Parse ``state``/``trans`` lines into a Mealy strategy over ``game``."""
    states, init, transitions = _parse_automaton(text, game, colored=False)
    rows: dict[tuple[str, VertexId], Step] = {}
    for lineno, src, v, step, _ in transitions:
        if (src, v) in rows:
            raise AutomatonValidationError(
                f"line {lineno}: second transition for ({src}, {game.names[v]})"
            )
        rows[(src, v)] = step
    return TableMealy(game, states, init, rows)


def parse_param(text: str, game: GameGraph) -> ParamAutomaton:
    """Parse a parameterized automaton; every ``trans`` carries a color."""
    states, init, transitions = _parse_automaton(text, game, colored=True)
    grouped: dict[tuple[str, VertexId], dict[str, Step]] = {}
    for lineno, src, v, step, color in transitions:
        slot = grouped.setdefault((src, v), {})
        if color.value in slot:
            raise AutomatonValidationError(
                f"line {lineno}: second {color.value} rule for ({src}, {game.names[v]})"
            )
        slot[color.value] = step
    rules = {key: Rule(**steps) for key, steps in grouped.items()}
    return ParamAutomaton(game, states, init, rules)


def _move_attr(g: GameGraph, step: Step) -> str:
    return "" if step.move is None else f" move={g.names[step.move]}"


def render_mealy(s: TableMealy) -> str:
    g = s.game
    lines = [f"state {m}{' init' if m == s.init else ''}" for m in s.states]
    for (m, v), step in sorted(s.rows.items(), key=lambda kv: (s.states.index(kv[0][0]), kv[0][1])):
        lines.append(f"trans {m} {g.names[v]} -> {step.target}{_move_attr(g, step)}")
    return "\n".join(lines) + "\n"


def render_param(p: ParamAutomaton) -> str:
    g = p.game
    lines = [f"state {m}{' init' if m == p.init else ''}" for m in p.states]
    for (m, v), rule in sorted(p.rules.items(), key=lambda kv: (p.states.index(kv[0][0]), kv[0][1])):
        for color, step in rule.colored_steps():
            lines.append(
                f"trans {m} {g.names[v]} -> {step.target}{_move_attr(g, step)}"
                f" color={color.value}"
            )
    return "\n".join(lines) + "\n"
