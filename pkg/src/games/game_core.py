"""Arenas of generalised safety/reachability games and their plays.

A game is a finite directed graph whose vertices are owned by the protagonist
(``P``) or the antagonist (``A``). Leaves carry an integer payoff and have
exactly one outgoing edge, their self-loop. A play that never reaches a leaf
has payoff 0.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Optional, Sequence

import networkx as nx

from src.games.errors import GameFormatError, GameValidationError, InvalidPathError

logger = logging.getLogger(__name__)

VertexId = int

PAYOFF_MIN, PAYOFF_MAX = -(2**63), 2**63 - 1


class Player(str, Enum):
    PROTAGONIST = "P"
    ANTAGONIST = "A"


@dataclass(frozen=True)
class GameGraph:
    """Immutable game arena.

    Vertices are indices into ``names``; ``edges[v]`` is the successor list of
    ``v`` in declaration order, which is also the tie-break order of every
    synthesis choice.
    """

    names: tuple[str, ...]
    owners: tuple[Player, ...]
    edges: tuple[tuple[VertexId, ...], ...]
    payoffs: tuple[Optional[int], ...]
    init: VertexId

    def __post_init__(self):
        n = len(self.names)
        if not (len(self.owners) == len(self.edges) == len(self.payoffs) == n):
            raise GameValidationError("vertex tables have different lengths")
        if len(set(self.names)) != n:
            raise GameValidationError("vertex names must be unique")
        if not 0 <= self.init < n:
            raise GameValidationError(f"init {self.init} is not a vertex")
        for v, succ in enumerate(self.edges):
            name = self.names[v]
            if not succ:
                raise GameValidationError(f"vertex {name} has no successor")
            if len(set(succ)) != len(succ):
                raise GameValidationError(f"vertex {name} has a duplicate edge")
            if any(not 0 <= w < n for w in succ):
                raise GameValidationError(f"vertex {name} has a dangling edge")
            if self.payoffs[v] is not None and succ != (v,):
                raise GameValidationError(
                    f"leaf {name} must have exactly its self-loop as edge"
                )

    def __len__(self) -> int:
        return len(self.names)

    @cached_property
    def index(self) -> dict[str, VertexId]:
        return {name: v for v, name in enumerate(self.names)}

    def vertex(self, name: str) -> VertexId:
        try:
            return self.index[name]
        except KeyError:
            raise GameValidationError(f"unknown vertex {name!r}") from None

    def is_leaf(self, v: VertexId) -> bool:
        return self.payoffs[v] is not None

    def is_protagonist(self, v: VertexId) -> bool:
        return self.owners[v] is Player.PROTAGONIST

    @cached_property
    def leaves(self) -> tuple[VertexId, ...]:
        return tuple(v for v in range(len(self)) if self.is_leaf(v))

    @cached_property
    def predecessors(self) -> tuple[tuple[VertexId, ...], ...]:
        pred: list[list[VertexId]] = [[] for _ in self.names]
        for v, succ in enumerate(self.edges):
            for w in succ:
                pred[w].append(v)
        return tuple(tuple(p) for p in pred)

    @cached_property
    def graph(self) -> nx.DiGraph:
        """The arena as a networkx digraph over vertex ids."""
        g = nx.DiGraph()
        g.add_nodes_from(range(len(self)))
        g.add_edges_from((v, w) for v, succ in enumerate(self.edges) for w in succ)
        return g


@dataclass(frozen=True)
class Lasso:
    """Ultimately periodic play ``prefix · cycle^ω``."""

    prefix: tuple[VertexId, ...]
    cycle: tuple[VertexId, ...]

    @classmethod
    def of(cls, g: GameGraph, prefix: Sequence[str], cycle: Sequence[str]) -> "Lasso":
        return cls(
            tuple(g.vertex(n) for n in prefix), tuple(g.vertex(n) for n in cycle)
        )

    def unrolled(self) -> "Lasso":
        """Absorb one period into the prefix and rotate the cycle."""
        return Lasso(self.prefix + self.cycle[:1], self.cycle[1:] + self.cycle[:1])


def successors(g: GameGraph, v: VertexId) -> tuple[VertexId, ...]:
    return g.edges[v]


def payoff_of_lasso(g: GameGraph, play: Lasso) -> int:
    """Payoff of an ultimately periodic play.

    Raises:
        InvalidPathError: if the play does not follow the edges of ``g``.
    """
    if not play.cycle:
        raise InvalidPathError("cycle must be nonempty")
    walk = play.prefix + play.cycle + play.cycle[:1]
    for v, w in zip(walk, walk[1:]):
        if not (0 <= v < len(g) and w in g.edges[v]):
            raise InvalidPathError(f"no edge from {v} to {w}")
    # a leaf only loops on itself, so a cycle through a leaf is that leaf
    for v in play.cycle:
        if g.is_leaf(v):
            return g.payoffs[v]
    return 0


def _parse_attrs(lineno: int, tokens: Sequence[str]) -> dict[str, str]:
    attrs: dict[str, str] = {}
    for tok in tokens:
        key, sep, value = tok.partition("=")
        if not sep or not value:
            raise GameFormatError(lineno, f"expected key=value, got {tok!r}")
        if key in attrs:
            raise GameFormatError(lineno, f"attribute {key!r} given twice")
        attrs[key] = value
    return attrs


def parse_game(text: str) -> GameGraph:
    """Parse a game file.

    Lines are ``vertex <name> owner=<P|A> [leaf=<int>]``, ``edge <from> <to>``
    and ``init <name>``; ``#`` starts a comment. Vertex ids follow declaration
    order.

    Raises:
        GameFormatError: on a syntax error, with the offending line.
        GameValidationError: when the parsed arena breaks an invariant.
    """
    names: list[str] = []
    owners: list[Player] = []
    payoffs: list[Optional[int]] = []
    edges: list[tuple[int, str, str]] = []
    init: Optional[tuple[int, str]] = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        kind, *args = line.split()
        if kind == "vertex":
            if not args:
                raise GameFormatError(lineno, "vertex needs a name")
            name, attrs = args[0], _parse_attrs(lineno, args[1:])
            if name in names:
                raise GameFormatError(lineno, f"vertex {name!r} declared twice")
            unknown = set(attrs) - {"owner", "leaf"}
            if unknown:
                raise GameFormatError(lineno, f"unknown attribute {sorted(unknown)[0]!r}")
            try:
                owner = Player(attrs["owner"])
            except KeyError:
                raise GameFormatError(lineno, "vertex needs owner=P or owner=A") from None
            except ValueError:
                raise GameFormatError(lineno, f"bad owner {attrs['owner']!r}") from None
            payoff = None
            if "leaf" in attrs:
                try:
                    payoff = int(attrs["leaf"])
                except ValueError:
                    raise GameFormatError(lineno, f"bad payoff {attrs['leaf']!r}") from None
                if not PAYOFF_MIN <= payoff <= PAYOFF_MAX:
                    raise GameFormatError(lineno, f"payoff {payoff} is not a signed 64-bit integer")
            names.append(name)
            owners.append(owner)
            payoffs.append(payoff)
        elif kind == "edge":
            if len(args) != 2:
                raise GameFormatError(lineno, "edge needs exactly two vertices")
            edges.append((lineno, args[0], args[1]))
        elif kind == "init":
            if len(args) != 1:
                raise GameFormatError(lineno, "init needs exactly one vertex")
            if init is not None:
                raise GameFormatError(lineno, "init given twice")
            init = (lineno, args[0])
        else:
            raise GameFormatError(lineno, f"unknown directive {kind!r}")

    index = {name: v for v, name in enumerate(names)}
    succ: list[list[int]] = [[] for _ in names]
    for lineno, src, dst in edges:
        for end in (src, dst):
            if end not in index:
                raise GameValidationError(f"line {lineno}: edge to undeclared vertex {end!r}")
        succ[index[src]].append(index[dst])
    if init is None:
        raise GameValidationError("missing init")
    if init[1] not in index:
        raise GameValidationError(f"line {init[0]}: init {init[1]!r} is not declared")

    g = GameGraph(
        names=tuple(names),
        owners=tuple(owners),
        edges=tuple(tuple(s) for s in succ),
        payoffs=tuple(payoffs),
        init=index[init[1]],
    )
    logger.debug("parsed game with %d vertices and %d leaves", len(g), len(g.leaves))
    return g


def render_game(g: GameGraph) -> str:
    """Canonical text of ``g``; ``parse_game(render_game(g)) == g``."""
    lines = []
    for v, name in enumerate(g.names):
        leaf = f" leaf={g.payoffs[v]}" if g.is_leaf(v) else ""
        lines.append(f"vertex {name} owner={g.owners[v].value}{leaf}")
    for v, succ in enumerate(g.edges):
        lines.extend(f"edge {g.names[v]} {g.names[w]}" for w in succ)
    lines.append(f"init {g.names[g.init]}")
    return "\n".join(lines) + "\n"
