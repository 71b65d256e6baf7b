"""Tests for dominance, admissibility and preadmissibility."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.config import GenConfig
from src.games.automata import instantiate, one_player_product, sync_product
from src.games.dominance import (
    check_admissibility,
    classify_strategy,
    equivalent,
    is_admissible,
    is_preadmissible,
    is_witness_state,
    non_admissibility_witnesses,
    strictly_dominated,
    weakly_dominated,
    witness_history,
)
from src.games.oracle import gen_random_game, gen_random_mealy
from src.games.values import Mode, product_values
from src.games.synthesis import preadmissibilize


class TestWeakDominance:
    def test_s0_below_s1(self, helpme, s0, s1):
        assert weakly_dominated(s0, s1, helpme).holds

    def test_somega_not_below_s0(self, helpme, somega, s0):
        verdict = weakly_dominated(somega, s0, helpme)
        assert not verdict.holds
        w = verdict.witness
        assert w.history(helpme) == ["v0"]
        assert (w.cval, w.aval) == (2, 1)

    def test_s1_not_below_somega(self, helpme, s1, somega):
        verdict = weakly_dominated(s1, somega, helpme)
        assert not verdict.holds
        assert verdict.witness.history(helpme) == ["v0", "v1", "v0"]
        assert (verdict.witness.cval, verdict.witness.aval) == (1, 0)

    def test_reflexive(self, helpme, s0, s1, somega):
        for s in (s0, s1, somega):
            assert weakly_dominated(s, s, helpme).holds

    def test_witness_path_ends_at_the_divergence(self, helpme, somega, s0):
        w = weakly_dominated(somega, s0, helpme).witness
        assert w.path[-1] == w.state
        sp = sync_product(somega, helpme, s0)
        assert sp.index[w.state] in sp.divergences


class TestStrictDominance:
    def test_s0_strictly_below_s1(self, helpme, s0, s1):
        assert strictly_dominated(s0, s1, helpme)

    def test_s0_not_strictly_below_itself(self, helpme, s0):
        assert not strictly_dominated(s0, s0, helpme)

    def test_s0_not_strictly_below_somega(self, helpme, s0, somega):
        assert not strictly_dominated(s0, somega, helpme)

    def test_equivalent_to_itself_only(self, helpme, s0, s1):
        assert equivalent(s1, s1, helpme)
        assert not equivalent(s0, s1, helpme)


class TestAdmissibility:
    def test_s0_witness_at_v0(self, helpme, s0):
        assert non_admissibility_witnesses(s0, helpme) == [("m", helpme.vertex("v0"))]
        assert not is_admissible(s0, helpme)

    def test_somega_is_admissible(self, helpme, somega):
        assert non_admissibility_witnesses(somega, helpme) == []
        assert is_admissible(somega, helpme)

    def test_s1_is_preadmissible_but_not_admissible(self, helpme, s1):
        verdict = check_admissibility(s1, helpme)
        assert not verdict.admissible
        assert verdict.preadmissible
        assert verdict.witnesses == [("b", helpme.vertex("v0"))]
        assert verdict.problematic == []

    def test_s0_witness_is_problematic(self, helpme, s0):
        verdict = check_admissibility(s0, helpme)
        assert verdict.problematic == [("m", helpme.vertex("v0"))]
        assert not verdict.preadmissible

    def test_s0_is_not_preadmissible(self, helpme, s0):
        assert not is_preadmissible(s0, helpme)

    def test_admissible_implies_preadmissible(self, helpme, somega):
        assert is_preadmissible(somega, helpme)

    def test_witness_history(self, helpme, s1):
        p = one_player_product(s1, helpme)
        assert witness_history(p, ("b", helpme.vertex("v0"))) == ["v0", "v1", "v0"]


class TestClassification:
    def test_helpme_strategies(self, helpme, s0, s1, somega):
        profile = classify_strategy(s0, helpme)
        assert profile.worst_case_optimal and not profile.cooperative_optimal
        profile = classify_strategy(somega, helpme)
        assert profile.cooperative_optimal and not profile.worst_case_optimal
        profile = classify_strategy(s1, helpme)
        assert profile.worst_case_cooperative_optimal
        assert (profile.aval, profile.cval) == (1, 2)


def random_pair(seed: int):
    cfg = GenConfig(seed=seed)
    g = gen_random_game(cfg)
    return g, gen_random_mealy(cfg, g, "a"), gen_random_mealy(cfg, g, "b")


class TestDominanceProperties:
    @given(st.integers(min_value=0, max_value=100_000))
    @settings(max_examples=40, deadline=None)
    def test_strict_implies_weak(self, seed):
        g, s1, s2 = random_pair(seed)
        if strictly_dominated(s1, s2, g):
            assert weakly_dominated(s1, s2, g).holds
            assert not weakly_dominated(s2, s1, g).holds

    @given(st.integers(min_value=0, max_value=100_000))
    @settings(max_examples=40, deadline=None)
    def test_harmless_divergences_are_harmless_both_ways(self, seed):
        # a divergence that neither witnesses non-admissibility of the first
        # strategy nor non-dominance by the second cannot witness the converse
        g, s1, s2 = random_pair(seed)
        sp = sync_product(s1, g, s2)
        p1 = one_player_product(s1, g)
        p2 = one_player_product(s2, g)
        for i in sp.divergences:
            m1, v, m2 = sp.states[i]
            first, second = (m1, v), (m2, v)
            if is_witness_state(p1, p1.index[first]):
                continue
            if product_values(p1, first, Mode.MAX) > product_values(p2, second, Mode.MIN):
                continue
            assert product_values(p2, second, Mode.MAX) <= product_values(p1, first, Mode.MIN)

    @given(st.integers(min_value=0, max_value=100_000))
    @settings(max_examples=25, deadline=None)
    def test_preadmissible_strategies_keep_their_values_upwards(self, seed):
        g, s1, s2 = random_pair(seed)
        sigma = preadmissibilize(s1, g)
        if not weakly_dominated(sigma, s2, g).holds:
            return
        a = classify_strategy(sigma, g)
        b = classify_strategy(s2, g)
        assert (a.aval, a.cval) == (b.aval, b.cval)


class TestHelpmeFamily:
    """s_k loops k times through v1 before taking l1; s_omega always loops."""

    @pytest.mark.parametrize("k", range(6))
    def test_each_loop_is_strictly_better(self, helpme, sk, k):
        assert strictly_dominated(instantiate(sk, k), instantiate(sk, k + 1), helpme)

    @pytest.mark.parametrize("k", range(6))
    def test_somega_is_incomparable(self, helpme, sk, somega, k):
        s_k = instantiate(sk, k)
        assert not weakly_dominated(somega, s_k, helpme).holds
        assert not weakly_dominated(s_k, somega, helpme).holds

    @pytest.mark.parametrize("k", range(6))
    def test_no_member_is_admissible(self, helpme, sk, k):
        assert not is_admissible(instantiate(sk, k), helpme)

    def test_somega_is_the_admissible_one(self, helpme, somega):
        assert is_admissible(somega, helpme)


def random_triple(seed: int):
    # one memory state and few edges keep dominance between random strategies common
    cfg = GenConfig(seed=seed, vertex_count=4, max_out_degree=2, mealy_states=1)
    g = gen_random_game(cfg)
    return g, [gen_random_mealy(cfg, g, salt) for salt in "abc"]


class TestPreorder:
    @given(st.integers(min_value=0, max_value=100_000))
    @settings(max_examples=60, deadline=None)
    def test_reflexive(self, seed):
        g, strategies = random_triple(seed)
        for s in strategies:
            assert weakly_dominated(s, s, g).holds

    @given(st.integers(min_value=0, max_value=100_000))
    @settings(max_examples=80, deadline=None)
    def test_transitive(self, seed):
        g, (a, b, c) = random_triple(seed)
        for x, y, z in ((a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)):
            if weakly_dominated(x, y, g).holds and weakly_dominated(y, z, g).holds:
                assert weakly_dominated(x, z, g).holds

    @pytest.mark.parametrize("k", range(4))
    def test_transitive_along_the_helpme_chain(self, helpme, sk, k):
        a, b, c = (instantiate(sk, k + j) for j in range(3))
        assert weakly_dominated(a, b, helpme).holds
        assert weakly_dominated(b, c, helpme).holds
        assert weakly_dominated(a, c, helpme).holds
