#!/usr/bin/env python3
"""Command line entry point.

Verdict commands print ``yes``/``no`` on stdout and exit with 0 (yes), 1 (no)
or 2 (inconclusive or error). ``--json`` replaces the text report by a single
JSON object.
"""

import argparse
import sys
from pathlib import Path
from typing import Optional

from pydantic import ValidationError

from src.config import (
    DEFAULT_INCREASING_CHAIN_CAP,
    DEFAULT_WORKERS,
    GenConfig,
    OracleGuards,
    SolverConfig,
)
from src.games.automata import (
    colored_product,
    instantiate,
    materialize,
    one_player_product,
    parse_mealy,
    parse_param,
    render_mealy,
    render_param,
    sync_product,
)
from src.games.chains import (
    Outcome,
    below_chain_bounds,
    chain_below_chain,
    chain_dominance_bounds,
    chain_report,
    is_increasing_chain,
    strategy_below_chain,
)
from src.games.dominance import (
    check_admissibility,
    strictly_dominated,
    weakly_dominated,
    witness_history,
)
from src.games.dot import colored_product_dot, one_player_dot, sync_product_dot
from src.games.errors import SolverError
from src.games.game_core import GameGraph, parse_game, render_game
from src.games.oracle import (
    gen_random_game,
    gen_random_mealy,
    gen_random_param,
    run_corpus,
)
from src.games.reports import (
    VerdictReport,
    dominance_report,
    state_witness,
    values_report,
)
from src.games.synthesis import ResultKind, improve_to_maximal
from src.games.values import solve
from src.helpers import (
    console,
    corpus_panel,
    emit,
    err_console,
    print_bounds,
    print_error,
    setup_logging,
)

YES, NO, INCONCLUSIVE = 0, 1, 2


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _game(args) -> GameGraph:
    return parse_game(_read(args.game))


def _write_dot(args, text: str):
    if args.dot:
        Path(args.dot).write_text(text, encoding="utf-8")


def _finish(args, report: VerdictReport, code: int, lines: list[str]) -> int:
    if args.json:
        emit(report.model_dump_json(exclude_none=True))
    else:
        for line in lines:
            emit(line)
        if report.bounds is not None:
            print_bounds(report.bounds)
    return code


def cmd_values(args, config: SolverConfig) -> int:
    g = _game(args)
    values = solve(g)
    lines = [
        f"{name}\t{values.aval[v]}\t{values.cval[v]}\t{values.acval[v]}"
        for v, name in enumerate(g.names)
    ]
    return _finish(args, values_report(g, values), YES, lines)


def cmd_dominates(args, config: SolverConfig) -> int:
    g = _game(args)
    s1 = parse_mealy(_read(args.mealy1), g)
    s2 = parse_mealy(_read(args.mealy2), g)
    _write_dot(args, sync_product_dot(sync_product(s1, g, s2)))
    if args.strict:
        holds = strictly_dominated(s1, s2, g)
        return _finish(
            args, VerdictReport(verdict="yes" if holds else "no"),
            YES if holds else NO, ["yes" if holds else "no"],
        )
    verdict = weakly_dominated(s1, s2, g)
    report = dominance_report(g, verdict)
    if verdict.holds:
        return _finish(args, report, YES, ["yes"])
    w = report.witness
    lines = [
        "no",
        "witness " + " ".join(w.history),
        f"at ({', '.join(w.state)}): cval={w.cval} > aval={w.aval}",
    ]
    return _finish(args, report, NO, lines)


def cmd_admissible(args, config: SolverConfig) -> int:
    g = _game(args)
    s = parse_mealy(_read(args.mealy), g)
    verdict = check_admissibility(s, g)
    p = one_player_product(s, g)
    _write_dot(args, one_player_dot(p, verdict.witnesses))
    if args.command == "preadmissible":
        holds, found = verdict.preadmissible, verdict.problematic
    else:
        holds, found = verdict.admissible, verdict.witnesses
    witnesses = [state_witness(g, st, witness_history(p, st)) for st in found]
    report = VerdictReport(verdict="yes" if holds else "no", witnesses=witnesses or None)
    lines = ["yes" if holds else "no"]
    lines += [
        f"witness ({', '.join(w.state)}) after " + " ".join(w.history)
        for w in witnesses
    ]
    return _finish(args, report, YES if holds else NO, lines)


def cmd_improve(args, config: SolverConfig) -> int:
    g = _game(args)
    s = parse_mealy(_read(args.mealy), g)
    result = improve_to_maximal(s, g)
    if result.kind is ResultKind.CHAIN:
        text = render_param(result.strategy)
        _write_dot(args, colored_product_dot(colored_product(result.strategy, g)))
    else:
        text = render_mealy(result.strategy)
    Path(args.output).write_text(text, encoding="utf-8")
    lines = [result.kind.value]
    lines += [f"rewired {m} {v}" for m, v in result.rewired_states]
    report = VerdictReport(
        verdict=result.kind.value,
        detail="; ".join(f"{m} {v}" for m, v in result.rewired_states) or None,
    )
    return _finish(args, report, YES, lines)


def cmd_instantiate(args, config: SolverConfig) -> int:
    g = _game(args)
    p = parse_param(_read(args.param), g)
    text = render_mealy(materialize(instantiate(p, args.n)))
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        console.out(text, end="")
    return YES


def cmd_is_chain(args, config: SolverConfig) -> int:
    g = _game(args)
    p = parse_param(_read(args.param), g)
    _write_dot(args, colored_product_dot(colored_product(p, g)))
    report = chain_report(p, g, config.workers)
    verdict = "yes" if report.holds else "no"
    lines = [verdict]
    if report.failing_index is not None:
        lines.append(f"failing index {report.failing_index}")
    out = VerdictReport(verdict=verdict, bounds=report.bounds)
    return _finish(args, out, YES if report.holds else NO, lines)


def cmd_is_increasing_chain(args, config: SolverConfig) -> int:
    g = _game(args)
    p = parse_param(_read(args.param), g)
    _write_dot(args, colored_product_dot(colored_product(p, g)))
    cap = config.increasing_chain_cap if args.cap is None else args.cap
    report = is_increasing_chain(p, g, cap=cap, workers=config.workers)
    code = {Outcome.YES: YES, Outcome.NO: NO, Outcome.BOUND_EXCEEDED: INCONCLUSIVE}
    lines = [report.outcome.value]
    if report.failing_index is not None:
        lines.append(f"failing index {report.failing_index}")
    if report.outcome is Outcome.BOUND_EXCEEDED:
        lines.append(f"checked up to {report.checked_up_to}, required {report.bounds.n_strict}")
    out = VerdictReport(verdict=report.outcome.value, bounds=report.bounds)
    return _finish(args, out, code[report.outcome], lines)


def cmd_below_chain(args, config: SolverConfig) -> int:
    g = _game(args)
    m = parse_mealy(_read(args.mealy), g)
    p = parse_param(_read(args.param), g)
    holds = strategy_below_chain(m, p, g, config.workers)
    out = VerdictReport(verdict="yes" if holds else "no", bounds=below_chain_bounds(m, p, g))
    return _finish(args, out, YES if holds else NO, [out.verdict])


def cmd_chain_dominates(args, config: SolverConfig) -> int:
    g = _game(args)
    ps = parse_param(_read(args.param_s), g)
    pt = parse_param(_read(args.param_t), g)
    holds = chain_below_chain(ps, pt, g, config.workers)
    out = VerdictReport(verdict="yes" if holds else "no", bounds=chain_dominance_bounds(ps, pt, g))
    return _finish(args, out, YES if holds else NO, [out.verdict])


def cmd_oracle_check(args, config: SolverConfig) -> int:
    cfg = GenConfig(seed=args.seed, vertex_count=args.vertices, leaf_count=args.leaves)
    guards = OracleGuards(max_vertices=args.max_vertices, memory_bound=args.memory_bound)
    report = run_corpus(cfg, args.count, guards)
    if not args.json:
        err_console.print(corpus_panel(report))
    verdict = "pass" if report.passed else "fail"
    lines = [verdict]
    if report.counterexample:
        lines.append(report.counterexample)
    out = VerdictReport(verdict=verdict, detail=report.counterexample)
    return _finish(args, out, YES if report.passed else NO, lines)


def cmd_gen(args, config: SolverConfig) -> int:
    cfg = GenConfig(
        seed=args.seed,
        vertex_count=args.vertices,
        leaf_count=args.leaves,
        mealy_states=args.states,
        param_states=args.states,
    )
    if args.kind == "game":
        text = render_game(gen_random_game(cfg))
    else:
        g = _game(args) if args.game else gen_random_game(cfg)
        if args.kind == "mealy":
            text = render_mealy(gen_random_mealy(cfg, g))
        else:
            text = render_param(gen_random_param(cfg, g))
    console.out(text, end="")
    return YES


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON object")
    common.add_argument("--dot", metavar="FILE", help="write the relevant product as DOT")
    common.add_argument("--verbose", "-v", action="store_true", help="debug logging")
    common.add_argument("--workers", type=int, default=DEFAULT_WORKERS)

    parser = argparse.ArgumentParser(
        prog="safety-games",
        description="Values, dominance and uniform chains in safety/reachability games",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(handler=handler)
        return p

    p = add("values", cmd_values, "print aVal, cVal and acVal per vertex")
    p.add_argument("game")

    p = add("dominates", cmd_dominates, "is the first strategy dominated by the second?")
    p.add_argument("game")
    p.add_argument("mealy1")
    p.add_argument("mealy2")
    p.add_argument("--strict", action="store_true", help="decide strict dominance")

    for name, text in (
        ("admissible", "is the strategy admissible?"),
        ("preadmissible", "is the strategy preadmissible?"),
    ):
        p = add(name, cmd_admissible, text)
        p.add_argument("game")
        p.add_argument("mealy")

    p = add("improve", cmd_improve, "dominating admissible strategy or maximal chain")
    p.add_argument("game")
    p.add_argument("mealy")
    p.add_argument("-o", "--output", required=True)

    p = add("instantiate", cmd_instantiate, "strategy realized with counter value n")
    p.add_argument("game")
    p.add_argument("param")
    p.add_argument("n", type=int)
    p.add_argument("-o", "--output")

    p = add("is-chain", cmd_is_chain, "does the automaton realize a chain?")
    p.add_argument("game")
    p.add_argument("param")

    p = add("is-increasing-chain", cmd_is_increasing_chain, "... a strictly increasing one?")
    p.add_argument("game")
    p.add_argument("param")
    p.add_argument(
        "--cap",
        type=int,
        default=None,
        help=f"largest index checked (default {DEFAULT_INCREASING_CHAIN_CAP})",
    )

    p = add("below-chain", cmd_below_chain, "is the strategy below the chain?")
    p.add_argument("game")
    p.add_argument("mealy")
    p.add_argument("param")

    p = add("chain-dominates", cmd_chain_dominates, "is the first chain below the second?")
    p.add_argument("game")
    p.add_argument("param_s")
    p.add_argument("param_t")

    p = add("oracle-check", cmd_oracle_check, "compare with the brute-force oracle")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--vertices", type=int, default=5)
    p.add_argument("--leaves", type=int, default=2)
    p.add_argument("--max-vertices", type=int, default=7)
    p.add_argument("--memory-bound", type=int, default=2)

    p = add("gen", cmd_gen, "print a random game or automaton")
    p.add_argument("kind", choices=["game", "mealy", "param"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--vertices", type=int, default=5)
    p.add_argument("--leaves", type=int, default=2)
    p.add_argument("--states", type=int, default=2)
    p.add_argument("--game", help="game to generate the automaton for")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.verbose)
    try:
        config = SolverConfig(workers=args.workers)
        return args.handler(args, config)
    except (SolverError, ValidationError, OSError, ValueError) as e:
        print_error(str(e))
        return INCONCLUSIVE


if __name__ == "__main__":
    sys.exit(main())
