"""Command-line interface.

Exit codes: 0 pass, 2 usage error, 3 property or verification failure,
4 input format error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Callable

from . import io
from .contracts import (
    ModifiedGame,
    lemma1_amounts,
    theorem1_amounts,
    tilde_amounts,
    verify_theorem1,
    verify_theorem2,
)
from .equilibrium import all_nash, is_strong_nash
from .errors import (
    FormatError,
    GenerationError,
    IndeterminateError,
    InvalidEpsilonError,
    PreconditionError,
    RangeError,
    ScheduleError,
    ShapeError,
)
from .generators import GeneratorConfig, gen_random_pd, gen_symmetric_schedule
from .pd import (
    check_lemma3,
    check_lemma4,
    check_lemma5,
    check_lemma6,
    check_lemma7,
    is_pd_flat,
    is_pd_recursive,
)
from .public_goods import build_pgg, verify_theorem3
from .reproduce import worked_examples
from .suites import SUITES, run_suite

EXIT_OK, EXIT_USAGE, EXIT_FAIL, EXIT_FORMAT = 0, 2, 3, 4


def _profile(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational such as 1/3, got {text!r}")


def _emit(args, data: dict, text: Callable[[dict], str]) -> None:
    out = io.dumps(data) if args.output == "json" else text(data)
    if getattr(args, "out", None):
        Path(args.out).write_text(out + "\n", encoding="utf-8")
    else:
        print(out)


def _game_text(data: dict) -> str:
    return json.dumps(data)


def _verdict_text(data: dict) -> str:
    lines = [f"{'PASS' if data.get('passed') else 'FAIL'}"]
    for key, value in data.items():
        if key != "passed":
            lines.append(f"  {key}: {json.dumps(value)}")
    return "\n".join(lines)


LEMMAS = {
    "lemma3": check_lemma3,
    "lemma4": check_lemma4,
    "lemma5": check_lemma5,
    "lemma6": lambda g: check_lemma6(g) is None,
    "lemma7": check_lemma7,
}


def cmd_validate_pd(args) -> int:
    g = io.load_game(args.game)
    verdict = (is_pd_recursive if args.recursive_oracle else is_pd_flat)(g)
    data = {"passed": verdict.is_pd, **verdict.to_json()}
    if args.lemmas and verdict.is_pd:
        results = {}
        for name, check in LEMMAS.items():
            try:
                results[name] = check(g)
            except PreconditionError as exc:
                results[name] = f"precondition: {exc.reason}"
        data["lemmas"] = results
        data["passed"] = all(v is not False for v in results.values())
    _emit(args, data, _verdict_text)
    return EXIT_OK if verdict.is_pd else EXIT_FAIL


def cmd_check_eq(args) -> int:
    g = io.load_game(args.game)
    profile = args.profile or g.cooperative
    report = is_strong_nash(g, profile, strict=not args.weak)
    data = {
        "passed": report.is_strong and report.is_nash,
        "nash_profiles": [list(s) for s in all_nash(g)],
        **report.to_json(),
    }
    _emit(args, data, _verdict_text)
    return EXIT_OK if data["passed"] else EXIT_FAIL


def _eps(args):
    if args.eps_ladder in (None, "default"):
        return None
    data = io.load_json(args.eps_ladder)
    if isinstance(data, dict):
        data = data.get("epsilons")
    if not isinstance(data, list) or not all(isinstance(row, list) for row in data):
        raise FormatError("epsilon file must hold an array of arrays")
    return [[io.parse_rational(x, "epsilons") for x in row] for row in data]


def cmd_make_contract(args) -> int:
    g = io.load_game(args.game)
    eps = _eps(args)
    if args.scheme == "lemma1":
        c = lemma1_amounts(g, eps)
    elif args.scheme == "tilde":
        c = tilde_amounts(g, eps).at_cooperation()
    else:
        c = theorem1_amounts(g, eps, scheme=args.scheme)
    _emit(args, c.to_json(), _game_text)
    return EXIT_OK


def cmd_apply(args) -> int:
    g = io.load_game(args.game)
    c = io.load_contract(args.contract)
    c.check_shape(g)
    _emit(args, ModifiedGame(g, c, args.reduced).game.to_json(), _game_text)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.theorem == "3":
        p = build_pgg(io.load_schedule(args.input))
        report = verify_theorem3(p, max_fixed=args.max_fixed)
    else:
        g = io.load_game(args.input)
        c = io.load_contract(args.contract) if args.contract else None
        verify = verify_theorem1 if args.theorem == "1" else verify_theorem2
        report = verify(g, c, args.max_fixed)
    _emit(args, report.to_json(), _verdict_text)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_gen(args) -> int:
    if args.kind == "pd":
        counts = tuple(args.counts) if args.counts else None
        n = len(counts) if counts else args.n
        cfg = GeneratorConfig(
            n=n,
            counts=counts,
            seed=args.seed,
            form=args.form,
            noise=args.noise,
        )
        game = gen_random_pd(cfg)
    else:
        sched = io.load_schedule(args.schedule) if args.schedule else gen_symmetric_schedule(args.seed)
        game = build_pgg(sched).game
    _emit(args, game.to_json(), _game_text)
    return EXIT_OK


def _suite_text(data: dict) -> str:
    if "suites" in data:
        return "\n".join(_suite_text(child) for child in data["suites"])
    line = f"{data['suite']}: {data['summary']} {'PASS' if data['passed'] else 'FAIL'}"
    if data["first_failure"]:
        line += "\n  first failure: " + json.dumps(data["first_failure"])
    return line


def cmd_run_suite(args) -> int:
    report = run_suite(args.name, args.trials, args.seed)
    _emit(args, report.to_json(), _suite_text)
    return EXIT_OK if report.passed else EXIT_FAIL


def _examples_text(data: dict) -> str:
    lines = []
    for check in data["checks"]:
        lines.append(f"{'MATCH' if check['passed'] else 'DIFF '} {check['name']}")
        for cell in check.get("mismatches", []):
            lines.append(f"    {json.dumps(cell)}")
    return "\n".join(lines)


def cmd_reproduce(args) -> int:
    checks = worked_examples(args.section)
    data = {"passed": all(c.passed for c in checks), "checks": [c.to_json() for c in checks]}
    _emit(args, data, _examples_text)
    return EXIT_OK if data["passed"] else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("json", "text"), default="text")

    parser = argparse.ArgumentParser(
        prog="losing-contracts",
        description="Losing contracts for prisoner's dilemmas: build, apply and verify.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate-pd", parents=[common], help="check the prisoner's dilemma chains")
    p.add_argument("game")
    p.add_argument("--recursive-oracle", action="store_true", help="use the recursive checker")
    p.add_argument("--lemmas", action="store_true", help="also check the structural lemmas")
    p.set_defaults(func=cmd_validate_pd)

    p = sub.add_parser("check-eq", parents=[common], help="Nash and strong Nash at a profile")
    p.add_argument("game")
    p.add_argument("--profile", type=_profile, help="comma-separated, default joint cooperation")
    p.add_argument("--weak", action="store_true", help="non-strict strong Nash")
    p.set_defaults(func=cmd_check_eq)

    p = sub.add_parser("make-contract", parents=[common], help="compute losing amounts")
    p.add_argument("game")
    p.add_argument(
        "--scheme", choices=("lemma1", "theorem1", "theorem2-reduced", "tilde"), default="theorem1"
    )
    p.add_argument("--eps-ladder", default="default", help="'default' or a JSON file of epsilons")
    p.add_argument("--out")
    p.set_defaults(func=cmd_make_contract)

    p = sub.add_parser("apply", parents=[common], help="apply a contract and print the new game")
    p.add_argument("game")
    p.add_argument("contract")
    p.add_argument("--reduced", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("verify-theorems", parents=[common], help="certify a theorem on one instance")
    p.add_argument("input", help="game file, or schedule file with --theorem 3")
    p.add_argument("--theorem", choices=("1", "2", "3"), default="1")
    p.add_argument("--contract")
    p.add_argument("--max-fixed", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", parents=[common], help="generate a game")
    p.add_argument("kind", choices=("pd", "pgg"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--counts", type=_profile)
    p.add_argument("--form", choices=("linear-separable", "linear-plus-noise"), default="linear-plus-noise")
    p.add_argument("--noise", type=_rational, default=Fraction(1, 3), help="rational noise scale")
    p.add_argument("--schedule", help="contribution schedule file (pgg)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("run-suite", parents=[common], help="run a seeded property suite")
    p.add_argument("name", choices=SUITES + ("all",))
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--out")
    p.set_defaults(func=cmd_run_suite)

    p = sub.add_parser("reproduce-paper", parents=[common], help="regenerate the worked examples")
    p.add_argument("--section", choices=("3", "4", "all"), default="all")
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, ScheduleError, ShapeError, InvalidEpsilonError, RangeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except (PreconditionError, IndeterminateError, GenerationError) as exc:
        print(f"failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
