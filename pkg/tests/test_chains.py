"""Tests for the chain decision procedures and their bounds."""

import math
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.config import GenConfig
from src.games.automata import instantiate, materialize, parse_param
from src.games.chains import (
    Outcome,
    below_chain_bounds,
    chain_below_chain,
    chain_bounds,
    chain_report,
    find_period,
    is_chain,
    is_increasing_chain,
    strategy_below_chain,
)
from src.games.dominance import weakly_dominated
from src.games.errors import NotAChainError
from src.games.game_core import parse_game
from src.games.oracle import gen_random_mealy, lollipop_chain, lollipop_game
from tests.conftest import fixture_text


class TestBounds:
    def test_helpme_sk(self, helpme, sk):
        bounds = chain_bounds(helpme, sk.size)
        assert (bounds.n_weak, bounds.n_strict) == (4, 28)
        assert bounds.n_strategy is None and bounds.n_chain is None

    def test_two_automata(self, helpme):
        bounds = chain_bounds(helpme, 2, t_size=3, m_size=5)
        assert bounds.n_weak == 8
        assert bounds.n_strict == 8 + math.factorial(8)
        assert bounds.n_chain == 8 * 7
        assert bounds.n_strategy == 4 * 3 * 6 + 1

    def test_below_chain_uses_the_reachable_strategy_size(self, helpme, sk, s1):
        assert below_chain_bounds(s1, sk, helpme).n_strategy == 4 * 1 * 3 + 1


class TestIsChain:
    def test_sk(self, helpme, sk):
        assert is_chain(sk, helpme)

    def test_swapped_colors_break_the_chain(self, helpme, sk_swapped):
        report = chain_report(sk_swapped, helpme)
        assert not report.holds
        assert report.failing_index == 0

    def test_all_black_automaton_is_a_constant_chain(self, helpme, somega_chain):
        assert is_chain(somega_chain, helpme)

    def test_single_worker(self, helpme, sk_shifted):
        assert is_chain(sk_shifted, helpme, workers=1)


class TestIsIncreasingChain:
    def test_sk_up_to_the_full_bound(self, helpme, sk):
        report = is_increasing_chain(sk, helpme)
        assert report.outcome is Outcome.YES
        assert report.checked_up_to == 28

    def test_cap_below_the_bound(self, helpme, sk):
        report = is_increasing_chain(sk, helpme, cap=2)
        assert report.outcome is Outcome.BOUND_EXCEEDED
        assert report.bounds.n_strict == 28
        assert report.checked_up_to == 2

    def test_constant_chain_is_not_increasing(self, helpme, somega_chain):
        report = is_increasing_chain(somega_chain, helpme, cap=5)
        assert report.outcome is Outcome.NO
        assert report.failing_index == 0


class TestStrategyBelowChain:
    def test_s0_is_below(self, helpme, s0, sk):
        assert strategy_below_chain(s0, sk, helpme)

    def test_somega_is_not_below(self, helpme, somega, sk):
        assert not strategy_below_chain(somega, sk, helpme)

    def test_chain_member_is_below(self, helpme, sk):
        assert strategy_below_chain(instantiate(sk, 2), sk, helpme)

    def test_requires_a_chain(self, helpme, s0, sk_swapped):
        with pytest.raises(NotAChainError):
            strategy_below_chain(s0, sk_swapped, helpme)


class TestChainBelowChain:
    def test_reflexive(self, helpme, sk):
        assert chain_below_chain(sk, sk, helpme)

    def test_shifted_chain_is_below(self, helpme, sk_shifted, sk):
        assert chain_below_chain(sk_shifted, sk, helpme)

    def test_somega_singleton_is_not_below(self, helpme, somega_chain, sk):
        assert not chain_below_chain(somega_chain, sk, helpme)

    def test_sk_is_not_below_somega(self, helpme, sk, somega_chain):
        assert not chain_below_chain(sk, somega_chain, helpme)

    def test_materialized_top_strategy(self, helpme, sk):
        # the comparison point of the first chain is a plain table
        top = materialize(instantiate(sk, 12))
        assert len(top.states) == 13


class TestChainOrderProperties:
    @pytest.mark.parametrize("j", range(5))
    def test_every_member_is_below_its_chain(self, helpme, sk, j):
        assert strategy_below_chain(instantiate(sk, j), sk, helpme)

    @given(st.integers(min_value=0, max_value=100_000))
    @settings(max_examples=40, deadline=None)
    def test_below_chain_is_closed_downwards(self, seed):
        helpme = parse_game(fixture_text("helpme.game"))
        sk = parse_param(fixture_text("sk.param"), helpme)
        cfg = GenConfig(seed=seed, mealy_states=3)
        m = gen_random_mealy(cfg, helpme, "upper")
        lower = gen_random_mealy(cfg, helpme, "lower")
        for upper in (m, instantiate(sk, seed % 5)):
            if strategy_below_chain(upper, sk, helpme) and weakly_dominated(
                lower, upper, helpme
            ).holds:
                assert strategy_below_chain(lower, sk, helpme)

    def test_chain_below_chain_is_transitive(self, helpme, sk, sk_shifted, somega_chain):
        chains = {"sk": sk, "shifted": sk_shifted, "somega": somega_chain}
        below = {
            (a, b): chain_below_chain(chains[a], chains[b], helpme)
            for a, b in product(chains, repeat=2)
        }
        assert all(below[(a, a)] for a in chains)
        for a, b, c in product(chains, repeat=3):
            if below[(a, b)] and below[(b, c)]:
                assert below[(a, c)]
        assert below[("sk", "shifted")] and below[("shifted", "sk")]
        assert not below[("somega", "sk")] and not below[("sk", "somega")]


class TestFindPeriod:
    def test_sk_repeats_with_period_one(self, helpme, sk):
        assert find_period(sk, helpme, 6, 5) == 1

    def test_dominated_pair_has_no_period(self, helpme, sk):
        assert find_period(sk, helpme, 5, 6) is None


class TestLollipop:
    @pytest.mark.parametrize("size", [4, 6, 9])
    def test_chain_on_every_size(self, size):
        g = lollipop_game(size)
        p = lollipop_chain(g)
        assert len(g) == size
        assert is_chain(p, g, workers=2)

    def test_too_small(self):
        with pytest.raises(ValueError):
            lollipop_game(3)
