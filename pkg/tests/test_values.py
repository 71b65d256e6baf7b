"""Tests for attractors, game values and strategy-relative values."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.config import GenConfig, OracleGuards
from src.games.automata import one_player_product
from src.games.game_core import Player, parse_game
from src.games.oracle import brute_value_table, gen_random_game
from src.games.values import (
    Mode,
    ValueTriple,
    antag_coop_value,
    antag_value,
    attractor,
    coop_value,
    product_values,
    solve,
    thresholds,
    winning_region,
)


def names(g, vertices):
    return {g.names[v] for v in vertices}


class TestAttractor:
    def test_protagonist_attracts_l1(self, helpme):
        assert names(helpme, attractor(helpme, Player.PROTAGONIST, [helpme.vertex("l1")])) == {
            "l1",
            "v0",
        }

    def test_antagonist_vertex_avoids_l2(self, helpme):
        assert names(helpme, attractor(helpme, Player.PROTAGONIST, [helpme.vertex("l2")])) == {
            "l2"
        }

    def test_empty_target(self, helpme):
        assert attractor(helpme, Player.ANTAGONIST, []) == frozenset()

    def test_thresholds_descend(self, helpme):
        assert thresholds(helpme) == [2, 1, 0]

    def test_winning_region_at_zero_is_everything_without_negative_leaves(self, helpme):
        assert winning_region(helpme, 0) == frozenset(range(len(helpme)))


class TestGameValues:
    @pytest.mark.parametrize(
        "vertex, expected",
        [
            ("v0", ValueTriple(1, 2, 2)),
            ("v1", ValueTriple(1, 2, 2)),
            ("l1", ValueTriple(1, 1, 1)),
            ("l2", ValueTriple(2, 2, 2)),
        ],
    )
    def test_helpme(self, helpme, vertex, expected):
        assert solve(helpme).triple(helpme.vertex(vertex)) == expected

    def test_single_value_accessors(self, helpme):
        v0 = helpme.vertex("v0")
        assert antag_value(helpme, v0) == 1
        assert coop_value(helpme, v0) == 2
        assert antag_coop_value(helpme, v0) == 2

    def test_boolean_variant(self, helpme_boolean):
        values = solve(helpme_boolean)
        assert values.triple(helpme_boolean.vertex("v0")) == ValueTriple(0, 1, 1)

    @pytest.mark.parametrize("vertex", ["v0", "v1", "v2"])
    def test_loop_variant(self, loop_variant, vertex):
        assert solve(loop_variant).triple(loop_variant.vertex(vertex)) == ValueTriple(1, 2, 2)

    def test_two_paths(self, two_paths):
        values = solve(two_paths)
        for vertex in ("v0", "v1", "v2"):
            assert values.triple(two_paths.vertex(vertex)) == ValueTriple(1, 2, 2)

    def test_cycle_counts_as_zero(self):
        g = parse_game(
            "vertex v owner=A\nvertex w owner=A\nvertex l owner=A leaf=-1\n"
            "edge v w\nedge v l\nedge w v\nedge l l\ninit v\n"
        )
        assert solve(g).triple(0) == ValueTriple(-1, 0, 0)

    def test_positive_value_ignores_cycles_for_acval(self):
        # the protagonist can guarantee 1 but looping pays only 0
        g = parse_game(
            "vertex v owner=P\nvertex l owner=A leaf=1\n"
            "edge v v\nedge v l\nedge l l\ninit v\n"
        )
        assert solve(g).triple(0) == ValueTriple(1, 1, 1)

    def test_value_ordering(self, helpme, two_paths, loop_variant):
        for g in (helpme, two_paths, loop_variant):
            values = solve(g)
            for v in range(len(g)):
                assert values.aval[v] <= values.acval[v] <= values.cval[v]


class TestProductValues:
    def test_somega(self, helpme, somega):
        p = one_player_product(somega, helpme)
        state = (somega.init, helpme.init)
        assert product_values(p, state, Mode.MIN) == 0
        assert product_values(p, state, Mode.MAX) == 2

    def test_s0(self, helpme, s0):
        p = one_player_product(s0, helpme)
        state = (s0.init, helpme.init)
        assert product_values(p, state, Mode.MIN) == 1
        assert product_values(p, state, Mode.MAX) == 1

    def test_s1(self, helpme, s1):
        p = one_player_product(s1, helpme)
        state = (s1.init, helpme.init)
        assert product_values(p, state, Mode.MIN) == 1
        assert product_values(p, state, Mode.MAX) == 2


class TestAgainstBruteForce:
    @given(st.integers(min_value=0, max_value=100_000))
    @settings(max_examples=30, deadline=None)
    def test_aval_and_cval_match(self, seed):
        g = gen_random_game(GenConfig(seed=seed))
        expected = brute_value_table(g, OracleGuards())
        values = solve(g)
        for v in range(len(g)):
            assert values.aval[v] == expected[v].aval
            assert values.cval[v] == expected[v].cval
            # bounded-memory enumeration can only miss better strategies
            assert expected[v].acval <= values.acval[v]

    def test_helpme_matches_exactly(self, helpme):
        expected = brute_value_table(helpme)
        assert [solve(helpme).triple(v) for v in range(len(helpme))] == expected
