"""DOT export of products."""

from collections.abc import Hashable, Iterable

from src.games.automata import ColoredProduct, SyncProduct, state_name
from src.games.values import OnePlayerProduct


def _label(g, state: tuple) -> str:
    parts = [g.names[x] if k == 1 else state_name(x) for k, x in enumerate(state)]
    return "(" + ", ".join(parts) + ")"


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _digraph(
    g,
    states: list[tuple],
    edges: Iterable[tuple[int, int, str]],
    doubled: set[int] = frozenset(),
) -> str:
    lines = ["digraph product {", "  rankdir=LR;"]
    for i, state in enumerate(states):
        shape = "doublecircle" if i in doubled else (
            "circle" if g.is_protagonist(state[1]) else "box"
        )
        extra = ", peripheries=2" if i == 0 else ""
        lines.append(f"  n{i} [label={_quote(_label(g, state))}, shape={shape}{extra}];")
    for i, j, color in edges:
        lines.append(f"  n{i} -> n{j} [color={color}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def colored_product_dot(cp: ColoredProduct) -> str:
    edges = [(cp.index[e.src], cp.index[e.dst], e.color.value) for e in cp.edges]
    return _digraph(cp.game, cp.states, edges)


def sync_product_dot(sp: SyncProduct) -> str:
    """Divergence states are drawn as double circles."""
    edges = [(i, j, "black") for i, succ in enumerate(sp.succ) for j in succ]
    return _digraph(sp.game, sp.states, edges, set(sp.divergences))


def one_player_dot(p: OnePlayerProduct, highlight: Iterable[Hashable] = ()) -> str:
    edges = [(i, j, "black") for i, succ in enumerate(p.succ) for j in succ]
    marked = {p.index[s] for s in highlight}
    return _digraph(p.game, p.states, edges, marked)
