"""Serializable results for the command line ``--json`` output."""

from collections.abc import Hashable
from typing import Optional

from pydantic import BaseModel

from src.games.automata import state_name
from src.games.chains import ChainBounds
from src.games.dominance import DominanceVerdict
from src.games.game_core import GameGraph, VertexId
from src.games.values import GameValues


class VertexValues(BaseModel):
    vertex: str
    aval: int
    cval: int
    acval: int


class WitnessModel(BaseModel):
    """A witness state and the game history leading to it."""

    state: list[str]
    history: list[str]
    cval: Optional[int] = None
    aval: Optional[int] = None


class VerdictReport(BaseModel):
    verdict: str
    witness: Optional[WitnessModel] = None
    witnesses: Optional[list[WitnessModel]] = None
    values: Optional[list[VertexValues]] = None
    bounds: Optional[ChainBounds] = None
    detail: Optional[str] = None


def values_report(g: GameGraph, values: GameValues) -> VerdictReport:
    rows = [
        VertexValues(
            vertex=name,
            aval=values.aval[v],
            cval=values.cval[v],
            acval=values.acval[v],
        )
        for v, name in enumerate(g.names)
    ]
    return VerdictReport(verdict="ok", values=rows)


def dominance_report(g: GameGraph, verdict: DominanceVerdict) -> VerdictReport:
    if verdict.holds:
        return VerdictReport(verdict="yes")
    w = verdict.witness
    m1, v, m2 = w.state
    return VerdictReport(
        verdict="no",
        witness=WitnessModel(
            state=[state_name(m1), g.names[v], state_name(m2)],
            history=w.history(g),
            cval=w.cval,
            aval=w.aval,
        ),
    )


def state_witness(
    g: GameGraph, state: tuple[Hashable, VertexId], history: list[str]
) -> WitnessModel:
    m, v = state
    return WitnessModel(state=[state_name(m), g.names[v]], history=history)
