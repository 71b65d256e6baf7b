"""Command line tests: verdict lines, exit codes and JSON output."""

import json

import pytest

from src.cli import INCONCLUSIVE, NO, YES, main
from src.games.automata import parse_mealy, parse_param
from src.games.dominance import equivalent
from src.games.game_core import parse_game
from tests.conftest import fixture_path, fixture_text

GAME = fixture_path("helpme.game")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out.splitlines()


class TestValues:
    def test_text(self, capsys):
        code, lines = run(capsys, "values", GAME)
        assert code == YES
        assert "v0\t1\t2\t2" in lines
        assert "l2\t2\t2\t2" in lines
        assert all(len(line.split("\t")) == 4 for line in lines)

    def test_json(self, capsys):
        code, lines = run(capsys, "values", GAME, "--json")
        data = json.loads(lines[0])
        assert data["verdict"] == "ok"
        assert {"vertex": "v1", "aval": 1, "cval": 2, "acval": 2} in data["values"]


class TestDominates:
    def test_somega_not_below_s0(self, capsys):
        code, lines = run(
            capsys, "dominates", GAME, fixture_path("somega.mealy"), fixture_path("s0.mealy")
        )
        assert code == NO
        assert lines[0] == "no"
        assert lines[1] == "witness v0"

    def test_s0_below_s1(self, capsys):
        code, lines = run(
            capsys, "dominates", GAME, fixture_path("s0.mealy"), fixture_path("s1.mealy")
        )
        assert (code, lines) == (YES, ["yes"])

    def test_strict(self, capsys):
        code, lines = run(
            capsys,
            "dominates",
            GAME,
            fixture_path("s0.mealy"),
            fixture_path("s1.mealy"),
            "--strict",
        )
        assert (code, lines[0]) == (YES, "yes")

    def test_json_witness_replays(self, capsys):
        code, lines = run(
            capsys,
            "dominates",
            GAME,
            fixture_path("s1.mealy"),
            fixture_path("somega.mealy"),
            "--json",
        )
        data = json.loads(lines[0])
        assert code == NO and data["verdict"] == "no"
        assert data["witness"]["history"] == ["v0", "v1", "v0"]
        assert data["witness"]["state"] == ["b", "v0", "m"]
        assert data["witness"]["cval"] > data["witness"]["aval"]

    def test_dot_export(self, capsys, tmp_path):
        target = tmp_path / "sync.dot"
        run(
            capsys,
            "dominates",
            GAME,
            fixture_path("somega.mealy"),
            fixture_path("s0.mealy"),
            "--dot",
            str(target),
        )
        text = target.read_text()
        assert text.startswith("digraph product {")
        assert "doublecircle" in text


class TestAdmissibility:
    def test_s0(self, capsys):
        code, lines = run(capsys, "admissible", GAME, fixture_path("s0.mealy"))
        assert code == NO
        assert lines[0] == "no"
        assert lines[1] == "witness (m, v0) after v0"

    def test_somega(self, capsys):
        code, lines = run(capsys, "admissible", GAME, fixture_path("somega.mealy"))
        assert (code, lines) == (YES, ["yes"])

    def test_preadmissible_hides_covered_witnesses(self, capsys):
        # s1 has a witness at (b, v0), but the good visit (a, v0) comes first
        code, lines = run(capsys, "preadmissible", GAME, fixture_path("s1.mealy"))
        assert (code, lines) == (YES, ["yes"])

    def test_preadmissible_lists_problematic_witnesses(self, capsys):
        code, lines = run(capsys, "preadmissible", GAME, fixture_path("s0.mealy"))
        assert code == NO
        assert lines == ["no", "witness (m, v0) after v0"]


class TestImprove:
    def test_s0_gives_a_chain(self, capsys, tmp_path, helpme):
        out = tmp_path / "chain.param"
        code, lines = run(capsys, "improve", GAME, fixture_path("s0.mealy"), "-o", str(out))
        assert code == YES
        assert lines[0] == "chain"
        chain = parse_param(out.read_text(), helpme)
        assert any(rule.is_test for rule in chain.rules.values())

    def test_somega_stays_single(self, capsys, tmp_path, helpme, somega):
        out = tmp_path / "single.mealy"
        code, lines = run(capsys, "improve", GAME, fixture_path("somega.mealy"), "-o", str(out))
        assert lines == ["single"]
        assert equivalent(parse_mealy(out.read_text(), helpme), somega, helpme)


class TestChains:
    def test_is_chain(self, capsys):
        code, lines = run(capsys, "is-chain", GAME, fixture_path("sk.param"))
        assert code == YES
        assert lines[0] == "yes"
        assert lines[-1] == "bounds N_weak=4 N_strict=28"

    def test_swapped_is_not_a_chain(self, capsys):
        code, lines = run(capsys, "is-chain", GAME, fixture_path("sk_swapped.param"))
        assert code == NO
        assert lines[:2] == ["no", "failing index 0"]

    def test_increasing_chain_with_small_cap(self, capsys):
        code, lines = run(
            capsys, "is-increasing-chain", GAME, fixture_path("sk.param"), "--cap", "2"
        )
        assert code == INCONCLUSIVE
        assert lines[0] == "bound-exceeded"

    def test_increasing_chain_default_cap(self, capsys):
        code, lines = run(capsys, "is-increasing-chain", GAME, fixture_path("sk.param"))
        assert (code, lines[0]) == (YES, "yes")

    def test_below_chain(self, capsys):
        code, lines = run(
            capsys, "below-chain", GAME, fixture_path("somega.mealy"), fixture_path("sk.param")
        )
        assert code == NO
        assert lines[0] == "no"
        assert lines[-1].startswith("bounds N_weak=4")

    def test_chain_dominates(self, capsys):
        code, lines = run(
            capsys,
            "chain-dominates",
            GAME,
            fixture_path("sk_shifted.param"),
            fixture_path("sk.param"),
            "--json",
        )
        data = json.loads(lines[0])
        assert code == YES
        assert data["verdict"] == "yes"
        assert data["bounds"]["n_chain"] == 24

    def test_instantiate(self, capsys, helpme, sk):
        from src.games.automata import instantiate

        code, lines = run(capsys, "instantiate", GAME, fixture_path("sk.param"), "2")
        assert code == YES
        table = parse_mealy("\n".join(lines), helpme)
        assert equivalent(table, instantiate(sk, 2), helpme)


class TestGenAndOracle:
    def test_gen_game_parses(self, capsys):
        code, lines = run(capsys, "gen", "game", "--seed", "3")
        assert code == YES
        parse_game("\n".join(lines))

    def test_gen_mealy_for_a_given_game(self, capsys, helpme):
        code, lines = run(capsys, "gen", "mealy", "--game", GAME, "--seed", "3")
        parse_mealy("\n".join(lines), helpme)

    def test_oracle_check_json(self, capsys):
        code, lines = run(capsys, "oracle-check", "--count", "3", "--json")
        data = json.loads(lines[0])
        assert data["verdict"] in ("pass", "fail")
        assert code == (YES if data["verdict"] == "pass" else NO)


class TestErrors:
    def test_missing_file(self, capsys):
        code = main(["values", "does-not-exist.game"])
        assert code == INCONCLUSIVE
        assert "Error" in capsys.readouterr().err

    def test_bad_game(self, capsys, tmp_path):
        bad = tmp_path / "bad.game"
        bad.write_text("vertex v0 owner=Q\n")
        assert main(["values", str(bad)]) == INCONCLUSIVE
        assert "line 1" in capsys.readouterr().err

    def test_automaton_missing_a_move(self, capsys):
        code = main(
            [
                "dominates",
                fixture_path("loop_variant.game"),
                fixture_path("somega.mealy"),
                fixture_path("s0.mealy"),
            ]
        )
        assert code == INCONCLUSIVE

    def test_unknown_subcommand(self):
        with pytest.raises(SystemExit):
            main(["frobnicate"])


def test_fixture_text_matches_paths():
    assert fixture_text("helpme.game").startswith("# Help-me?")
