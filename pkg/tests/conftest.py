"""Shared fixtures: the Help-me? game, its variants and the strategies on it."""

from pathlib import Path

import pytest

from src.games.automata import parse_mealy, parse_param
from src.games.game_core import parse_game

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text(encoding="utf-8")


def fixture_path(name: str) -> str:
    return str(FIXTURES / name)


@pytest.fixture
def helpme():
    return parse_game(fixture_text("helpme.game"))


@pytest.fixture
def helpme_boolean():
    return parse_game(fixture_text("helpme_boolean.game"))


@pytest.fixture
def loop_variant():
    return parse_game(fixture_text("loop_variant.game"))


@pytest.fixture
def two_paths():
    return parse_game(fixture_text("two_paths.game"))


@pytest.fixture
def s0(helpme):
    return parse_mealy(fixture_text("s0.mealy"), helpme)


@pytest.fixture
def s1(helpme):
    return parse_mealy(fixture_text("s1.mealy"), helpme)


@pytest.fixture
def somega(helpme):
    return parse_mealy(fixture_text("somega.mealy"), helpme)


@pytest.fixture
def sk(helpme):
    return parse_param(fixture_text("sk.param"), helpme)


@pytest.fixture
def sk_swapped(helpme):
    return parse_param(fixture_text("sk_swapped.param"), helpme)


@pytest.fixture
def sk_shifted(helpme):
    return parse_param(fixture_text("sk_shifted.param"), helpme)


@pytest.fixture
def somega_chain(helpme):
    return parse_param(fixture_text("somega.param"), helpme)
