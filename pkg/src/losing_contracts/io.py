"""JSON reading and writing for games, contracts and contribution schedules.

Rationals are integers or canonical ``"p/q"`` strings (lowest terms, positive
denominator greater than one). Anything else is rejected with FormatError.
"""

from __future__ import annotations

import json
import math
import re
from fractions import Fraction
from pathlib import Path
from typing import Any

from .contracts import LosingContract
from .errors import FormatError, GameError
from .game import Game, format_rational
from .public_goods import ContributionSchedule

_RATIONAL = re.compile(r"-?(0|[1-9][0-9]*)/([1-9][0-9]*)")


def parse_rational(value: Any, where: str = "value") -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise FormatError(f"{where}: expected an integer or 'p/q' string, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    m = _RATIONAL.fullmatch(value)
    if not m:
        raise FormatError(f"{where}: {value!r} is not of the form 'p/q'")
    num, den = int(value.split("/")[0]), int(m.group(2))
    if den == 1 or math.gcd(num, den) != 1 or value.startswith("-0"):
        raise FormatError(f"{where}: {value!r} is not in canonical form")
    return Fraction(num, den)


def _int_list(value: Any, where: str) -> list[int]:
    if not isinstance(value, list) or not all(
        isinstance(x, int) and not isinstance(x, bool) for x in value
    ):
        raise FormatError(f"{where}: expected a list of integers")
    return value


def game_from_json(data: Any) -> Game:
    if not isinstance(data, dict):
        raise FormatError("game file must hold a JSON object")
    for key in ("players", "strategies", "payoffs"):
        if key not in data:
            raise FormatError(f"game file is missing {key!r}")
    n = data["players"]
    counts = _int_list(data["strategies"], "strategies")
    if not isinstance(n, int) or isinstance(n, bool) or n != len(counts):
        raise FormatError("'players' must equal the length of 'strategies'")
    rows = data["payoffs"]
    if not isinstance(rows, list) or len(rows) != n:
        raise FormatError(f"'payoffs' must hold {n} arrays")
    size = math.prod(counts)
    parsed = []
    for i, row in enumerate(rows, start=1):
        if not isinstance(row, list) or len(row) != size:
            raise FormatError(f"payoffs of player {i} must hold {size} entries")
        parsed.append(
            tuple(parse_rational(x, f"payoffs[{i}][{t}]") for t, x in enumerate(row))
        )
    try:
        return Game(tuple(counts), tuple(parsed))
    except GameError as exc:
        raise FormatError(str(exc)) from exc


def _rational_rows(value: Any, where: str) -> list[list[Fraction]]:
    if not isinstance(value, list) or not all(isinstance(row, list) for row in value):
        raise FormatError(f"{where}: expected an array of arrays")
    return [
        [parse_rational(x, f"{where}[{i}][{k}]") for k, x in enumerate(row)]
        for i, row in enumerate(value, start=1)
    ]


SCHEMES = ("lemma1", "theorem1", "theorem2-reduced", "tilde", "custom")


def contract_from_json(data: Any) -> LosingContract:
    if not isinstance(data, dict) or "amounts" not in data:
        raise FormatError("contract file must hold an object with 'amounts'")
    scheme = data.get("scheme", "custom")
    if scheme not in SCHEMES:
        raise FormatError(f"unknown contract scheme {scheme!r}")
    amounts = _rational_rows(data["amounts"], "amounts")
    eps = data.get("epsilons")
    epsilons = None
    if eps is not None:
        epsilons = _rational_rows(eps, "epsilons")
        if all(not row for row in epsilons):
            epsilons = None
    try:
        return LosingContract(amounts, epsilons, scheme)
    except GameError as exc:
        raise FormatError(str(exc)) from exc


def schedule_from_json(data: Any) -> ContributionSchedule:
    if not isinstance(data, dict):
        raise FormatError("schedule file must hold a JSON object")
    for key in ("contributions", "threshold", "multiplier"):
        if key not in data:
            raise FormatError(f"schedule file is missing {key!r}")
    return ContributionSchedule(
        _rational_rows(data["contributions"], "contributions"),
        parse_rational(data["threshold"], "threshold"),
        parse_rational(data["multiplier"], "multiplier"),
    )


def load_contract(path: str | Path) -> LosingContract:
    return contract_from_json(load_json(path))


def load_schedule(path: str | Path) -> ContributionSchedule:
    return schedule_from_json(load_json(path))


def game_to_json(g: Game) -> dict:
    return g.to_json()


def load_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise FormatError(f"{path}: {exc}") from exc


def load_game(path: str | Path) -> Game:
    return game_from_json(load_json(path))


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2)


def rationals(values) -> list:
    return [format_rational(Fraction(v)) for v in values]
