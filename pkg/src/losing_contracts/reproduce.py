"""Regenerate the derived worked-example tables from the base tables."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import fixtures
from .contracts import LosingContract, apply_losing, lemma1_amounts
from .equilibrium import all_nash, strong_counterexample
from .exchange import PunishContract, RewardContract, apply_punish, apply_reward, reproduce_failures
from .game import Game, format_rational


@dataclass
class TableCheck:
    name: str
    source: str
    contract: dict
    mismatches: list[dict] = field(default_factory=list)

    @property
    def matches(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {
            "table": self.name,
            "source": self.source,
            "contract": self.contract,
            "matches": self.matches,
            "mismatches": self.mismatches,
        }


def diff_games(got: Game, want: Game) -> list[dict]:
    if got.counts != want.counts:
        return [{"shape": [list(got.counts), list(want.counts)]}]
    out = []
    for s in want.profiles():
        a, b = got.payoff_vector(s), want.payoff_vector(s)
        if a != b:
            out.append(
                {
                    "profile": list(s),
                    "got": [format_rational(x) for x in a],
                    "expected": [format_rational(x) for x in b],
                }
            )
    return out


def _lemma1_tables_5_6(g: Game) -> tuple[Game, dict]:
    c = lemma1_amounts(g, 1)
    return apply_losing(g, c), c.to_json()


def _six_units(g: Game) -> tuple[Game, dict]:
    c = LosingContract.uniform(g.counts, 6)
    return apply_losing(g, c), c.to_json()


def _reward(g: Game) -> tuple[Game, dict]:
    return apply_reward(g, RewardContract((5, 3))), {"reward": [5, 3]}


def _punish(g: Game) -> tuple[Game, dict]:
    return apply_punish(g, PunishContract((2, 2, 2))), {"punish": [2, 2, 2], "plan": "conditional"}


DERIVATIONS: dict[str, tuple[str, str, Callable[[Game], tuple[Game, dict]]]] = {
    "table-2": ("3", "table-1", _six_units),
    "tables-7-8": ("3", "tables-5-6", _lemma1_tables_5_6),
    "table-11": ("4", "tables-9", _reward),
    "tables-16-17": ("4", "tables-12-13", _punish),
}


def reproduce_tables(section: str = "all") -> list[TableCheck]:
    checks = []
    for name, (where, source, derive) in DERIVATIONS.items():
        if section in ("all", where):
            got, contract = derive(fixtures.load(source))
            checks.append(TableCheck(name, source, contract, diff_games(got, fixtures.load(name))))
    return checks


def lemma1_amounts_on_tables_5_6() -> tuple[Fraction, ...]:
    """The single amount each player forfeits for defecting in tables 5-6."""
    c = lemma1_amounts(fixtures.load("tables-5-6"), 1)
    return tuple(row[0] for row in c.amounts)


@dataclass
class ExampleCheck:
    name: str
    passed: bool
    detail: dict

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, **self.detail}


def worked_examples(section: str = "all") -> list[ExampleCheck]:
    """Every derived table plus the equilibrium claims made about them.

    Section ``"3"`` covers the losing-contract examples, ``"4"`` the exchange
    contracts, ``"all"`` both.
    """
    if section not in ("3", "4", "all"):
        raise ValueError(f"unknown section {section!r}")
    out = [ExampleCheck(c.name, c.matches, c.to_json()) for c in reproduce_tables(section)]
    if section in ("3", "all"):
        amounts = lemma1_amounts_on_tables_5_6()
        out.append(
            ExampleCheck(
                "tables-5-6-lemma1-amounts",
                amounts == (2, 2, 2),
                {"amounts": [format_rational(a) for a in amounts]},
            )
        )
        g = fixtures.load("tables-7-8")
        nash = all_nash(g)
        found = strong_counterexample(g, g.cooperative, strict=True)
        out.append(
            ExampleCheck(
                "tables-7-8-not-strong",
                nash == [g.cooperative]
                and found is not None
                and len(found.coalition) == 2
                and found.after > 16,
                {"nash": [list(s) for s in nash], "counterexample": found and found.to_json()},
            )
        )
    if section in ("4", "all"):
        out.extend(ExampleCheck(c.name, c.reproduced, c.to_json()) for c in reproduce_failures().checks)
    return out
