"""Exchange contracts: transfers between players instead of forfeits.

These mechanisms only move money around, so every profile keeps its payoff
sum. They are implemented at the scale of the worked examples (a two-player
reward exchange and a three-player punishment exchange) to reproduce why they
fail where losing contracts succeed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .contracts import optimizes_game
from .equilibrium import Counterexample, all_nash, strong_counterexample
from .errors import ShapeError
from .game import Game, Profile, format_rational, to_fraction
from . import fixtures

PLANS = ("conditional", "directed", "equal-split")
RING = {1: 2, 2: 3, 3: 1}
# Only r_1 = 10 is pinned down by the example; the other two amounts are
# small enough not to matter for the coalition {1, 2}.
EXCHANGE_R = (Fraction(10), Fraction(2), Fraction(2))


def _amounts(values: Sequence, n: int, what: str) -> tuple[Fraction, ...]:
    out = tuple(to_fraction(v) for v in values)
    if len(out) != n:
        raise ShapeError(f"{what} needs {n} amounts, got {len(out)}")
    if any(v < 0 for v in out):
        raise ValueError(f"{what} amounts must be non-negative")
    return out


@dataclass(frozen=True)
class RewardContract:
    """Player ``i`` pays ``p_i`` to the opponent whenever the opponent cooperates."""

    p: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "p", _amounts(self.p, 2, "reward contract"))


@dataclass(frozen=True)
class PunishContract:
    """Player ``i`` pays ``r_i`` to others each time it defects.

    ``conditional`` pays along the ring 1 -> 2 -> 3 -> 1, except that two
    betrayers pay each other; ``directed`` always pays the ring successor;
    ``equal-split`` shares ``r_i`` equally between the other two players.
    """

    r: tuple[Fraction, ...]
    plan: str = "conditional"

    def __post_init__(self):
        object.__setattr__(self, "r", _amounts(self.r, 3, "punish contract"))
        if self.plan not in PLANS:
            raise ValueError(f"unknown plan {self.plan!r}; expected one of {PLANS}")

    def transfers(self, s: Sequence[int]) -> dict[tuple[int, int], Fraction]:
        """Payments ``(payer, recipient) -> amount`` at profile ``s``."""
        betrayers = [i for i in (1, 2, 3) if s[i - 1] == 2]
        out: dict[tuple[int, int], Fraction] = {}
        for i in betrayers:
            if self.plan == "equal-split":
                for j in (1, 2, 3):
                    if j != i:
                        out[(i, j)] = self.r[i - 1] / 2
                continue
            if self.plan == "conditional" and len(betrayers) == 2:
                recipient = next(j for j in betrayers if j != i)
            else:
                recipient = RING[i]
            out[(i, recipient)] = self.r[i - 1]
        return out


def _require_shape(g: Game, counts: tuple[int, ...]) -> None:
    if g.counts != counts:
        raise ShapeError(f"expected a game with strategy counts {counts}, got {g.counts}")


def apply_reward(g: Game, c: RewardContract) -> Game:
    _require_shape(g, (2, 2))
    p1, p2 = c.p

    def u(i, s):
        # each cooperator receives the opponent's offer
        got = (p2 if s[0] == 1 else 0, p1 if s[1] == 1 else 0)
        paid = (got[1], got[0])
        return g.payoff(i, s) + got[i - 1] - paid[i - 1]

    return Game.from_function(g.counts, u)


def apply_punish(g: Game, c: PunishContract) -> Game:
    _require_shape(g, (2, 2, 2))

    def u(i, s):
        delta = Fraction(0)
        for (payer, recipient), amount in c.transfers(s).items():
            if payer == i:
                delta -= amount
            if recipient == i:
                delta += amount
        return g.payoff(i, s) + delta

    return Game.from_function(g.counts, u)


@dataclass
class FailureCheck:
    name: str
    reproduced: bool
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "reproduced": self.reproduced, **self.detail}


@dataclass
class ExchangeReport:
    checks: list[FailureCheck]

    @property
    def passed(self) -> bool:
        return all(c.reproduced for c in self.checks)

    def to_json(self) -> dict:
        return {"passed": self.passed, "checks": [c.to_json() for c in self.checks]}


def _vector(g: Game, s: Profile) -> list:
    return [format_rational(x) for x in g.payoff_vector(s)]


def _blocking(g: Game, s: Profile) -> Counterexample | None:
    return strong_counterexample(g, s, strict=False)


def reproduce_failures() -> ExchangeReport:
    """The three ways exchange contracts fail on the worked examples."""
    checks = []

    base = fixtures.load("tables-9")
    rewarded = apply_reward(base, RewardContract((5, 3)))
    e = base.cooperative
    opt = optimizes_game(base, rewarded, e)
    checks.append(
        FailureCheck(
            "reward-does-not-optimize",
            not opt and rewarded.payoff(1, e) < base.payoff(1, e),
            {"p": [5, 3], "before": _vector(base, e), "after": _vector(rewarded, e), "optimizes": opt},
        )
    )

    base = fixtures.load("tables-12-13")
    punished = apply_punish(base, PunishContract((2, 2, 2), "conditional"))
    nash = all_nash(punished)
    checks.append(
        FailureCheck(
            "conditional-punish-keeps-defection",
            (2, 2, 2) in nash and punished == fixtures.load("tables-16-17"),
            {"r": [2, 2, 2], "nash": [list(s) for s in nash]},
        )
    )

    base = fixtures.load("tables-18-19")
    for plan, expected in (("directed", (6, 15, 3)), ("equal-split", (6, 10, 8))):
        modified = apply_punish(base, PunishContract(EXCHANGE_R, plan))
        found = _blocking(modified, base.cooperative)
        value = modified.payoff_vector((2, 1, 1))
        checks.append(
            FailureCheck(
                f"{plan}-punish-not-strong",
                found is not None and found.coalition == (1, 2) and value == expected,
                {
                    "r": [format_rational(x) for x in EXCHANGE_R],
                    "profile_2_1_1": [format_rational(x) for x in value],
                    "counterexample": found and found.to_json(),
                },
            )
        )
    return ExchangeReport(checks)
