"""Decisions on uniform chains realized by parameterized automata.

Each question about the infinite sequence ``instantiate(p, 0), instantiate(p, 1),
...`` reduces to finitely many pairwise dominance checks up to a bound that
depends on the arena size ``|G|`` and the reachable automaton sizes.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from enum import Enum
from itertools import count, islice
from typing import Callable, Iterable, Optional

from pydantic import BaseModel

from src.config import DEFAULT_WORKERS
from src.games.automata import (
    MealyStrategy,
    ParamAutomaton,
    check_game,
    instantiate,
    materialize,
    one_player_product,
)
from src.games.dominance import strictly_dominated, weakly_dominated
from src.games.errors import NotAChainError
from src.games.game_core import GameGraph

logger = logging.getLogger(__name__)


class ChainBounds(BaseModel):
    """Indices up to which pairwise checks settle a chain question.

    ``n_strategy`` and ``n_chain`` only exist for questions that involve a
    second strategy or chain.
    """

    n_weak: int
    n_strict: int
    n_strategy: Optional[int] = None
    n_chain: Optional[int] = None


def strategy_size(s: MealyStrategy, g: GameGraph) -> int:
    """Memory states occurring in the reachable product of ``s`` with ``g``."""
    return one_player_product(s, g).memory_size


def chain_bounds(
    g: GameGraph,
    s_size: int,
    t_size: Optional[int] = None,
    m_size: Optional[int] = None,
) -> ChainBounds:
    base = len(g) * s_size
    bounds = ChainBounds(n_weak=base, n_strict=base + math.factorial(base))
    if t_size is not None:
        bounds.n_chain = base * (2 * t_size + 1)
        if m_size is not None:
            bounds.n_strategy = len(g) * t_size * (m_size + 1) + 1
    return bounds


def _first_failure(
    check: Callable[[int], bool], indices: Iterable[int], workers: int
) -> Optional[int]:
    """Smallest index whose check fails, evaluating batches concurrently."""
    it = iter(indices)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        while batch := list(islice(it, workers)):
            for i, ok in zip(batch, pool.map(check, batch)):
                if not ok:
                    return i
    return None


class ChainReport(BaseModel):
    holds: bool
    bounds: ChainBounds
    failing_index: Optional[int] = None


def chain_report(
    p: ParamAutomaton, g: GameGraph, workers: int = DEFAULT_WORKERS
) -> ChainReport:
    """``is_chain`` with its bounds and the first ``i`` where ``S_i`` is not
    dominated by ``S_{i+1}``."""
    check_game(p, g)
    bounds = chain_bounds(g, p.size)

    def step_ok(i: int) -> bool:
        return weakly_dominated(instantiate(p, i), instantiate(p, i + 1), g).holds

    failing = _first_failure(step_ok, range(bounds.n_weak + 1), workers)
    logger.debug("chain check up to %d: failing index %s", bounds.n_weak, failing)
    return ChainReport(holds=failing is None, bounds=bounds, failing_index=failing)


def is_chain(p: ParamAutomaton, g: GameGraph, workers: int = DEFAULT_WORKERS) -> bool:
    return chain_report(p, g, workers).holds


class Outcome(str, Enum):
    YES = "yes"
    NO = "no"
    BOUND_EXCEEDED = "bound-exceeded"


class IncreasingReport(BaseModel):
    outcome: Outcome
    bounds: ChainBounds
    checked_up_to: int
    failing_index: Optional[int] = None


def is_increasing_chain(
    p: ParamAutomaton,
    g: GameGraph,
    cap: Optional[int] = None,
    workers: int = DEFAULT_WORKERS,
) -> IncreasingReport:
    """Whether every ``S_i`` is strictly dominated by ``S_{i+1}``.

    The bound grows factorially, so ``cap`` limits the checked indices; if
    every checked pair is strict but ``cap`` stops short of the bound the
    outcome is ``BOUND_EXCEEDED``.
    """
    check_game(p, g)
    bounds = chain_bounds(g, p.size)
    last = bounds.n_strict if cap is None else min(bounds.n_strict, cap)

    def step_ok(i: int) -> bool:
        return strictly_dominated(instantiate(p, i), instantiate(p, i + 1), g)

    failing = _first_failure(step_ok, range(last + 1), workers)
    if failing is not None:
        outcome = Outcome.NO
    elif last < bounds.n_strict:
        outcome = Outcome.BOUND_EXCEEDED
    else:
        outcome = Outcome.YES
    return IncreasingReport(
        outcome=outcome, bounds=bounds, checked_up_to=last, failing_index=failing
    )


def _require_chain(p: ParamAutomaton, g: GameGraph, workers: int) -> None:
    report = chain_report(p, g, workers)
    if not report.holds:
        raise NotAChainError(
            f"instantiation {report.failing_index} is not dominated by its successor"
        )


def below_chain_bounds(m: MealyStrategy, p: ParamAutomaton, g: GameGraph) -> ChainBounds:
    return chain_bounds(g, p.size, t_size=p.size, m_size=strategy_size(m, g))


def strategy_below_chain(
    m: MealyStrategy,
    p: ParamAutomaton,
    g: GameGraph,
    workers: int = DEFAULT_WORKERS,
    assume_chain: bool = False,
) -> bool:
    """Whether some strategy of the chain realized by ``p`` dominates ``m``.

    It suffices to compare ``m`` with the instantiation at ``n_strategy``.

    Raises:
        NotAChainError: if ``p`` does not realize a chain.
    """
    check_game(m, g)
    if not assume_chain:
        _require_chain(p, g, workers)
    n = below_chain_bounds(m, p, g).n_strategy
    return weakly_dominated(m, instantiate(p, n), g).holds


def chain_dominance_bounds(
    ps: ParamAutomaton, pt: ParamAutomaton, g: GameGraph
) -> ChainBounds:
    return chain_bounds(g, ps.size, t_size=pt.size)


def chain_below_chain(
    ps: ParamAutomaton,
    pt: ParamAutomaton,
    g: GameGraph,
    workers: int = DEFAULT_WORKERS,
) -> bool:
    """Whether every strategy of the first chain is below some of the second.

    Raises:
        NotAChainError: if either automaton does not realize a chain.
    """
    _require_chain(ps, g, workers)
    _require_chain(pt, g, workers)
    n = chain_dominance_bounds(ps, pt, g).n_chain
    top = materialize(instantiate(ps, n))
    return strategy_below_chain(top, pt, g, workers, assume_chain=True)


def find_period(
    p: ParamAutomaton,
    g: GameGraph,
    n1: int,
    n2: int,
    repeats: int = 3,
) -> Optional[int]:
    """Shift ``k`` that reproduces the non-dominance of ``S_n1`` by ``S_n2``.

    Returns the smallest ``k <= |G||S|`` such that ``S_{n1+jk}`` is not
    dominated by ``S_{n2+jk}`` for ``j < repeats``, or ``None``.
    """

    def apart(a: int, b: int) -> bool:
        return not weakly_dominated(instantiate(p, a), instantiate(p, b), g).holds

    if not apart(n1, n2):
        return None
    for k in islice(count(1), len(g) * p.size):
        if all(apart(n1 + j * k, n2 + j * k) for j in range(1, repeats)):
            return k
    return None
