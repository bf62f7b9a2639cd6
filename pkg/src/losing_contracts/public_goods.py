"""Threshold public-goods games and their losing contracts.

Player ``i`` contributes ``c_{i,k}`` when playing strategy ``k``; the fund is
multiplied by ``a`` and shared equally among the ``n`` players once the total
reaches the threshold. Below the threshold every contribution is refunded.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .contracts import (
    LosingContract,
    TheoremReport,
    signing_game,
    telescoped_amounts,
    tilde_amounts,
    verify_reduced,
)
from .errors import IndeterminateError, ScheduleError
from .game import Game, format_rational, to_fraction
from .pd import PdViolation, chain_failure, block


@dataclass(frozen=True)
class ContributionSchedule:
    """Contributions per player and strategy, threshold ``c`` and multiplier ``a``."""

    contributions: tuple[tuple[Fraction, ...], ...]
    threshold: Fraction
    multiplier: Fraction

    def __post_init__(self):
        try:
            rows = tuple(tuple(to_fraction(x) for x in row) for row in self.contributions)
            threshold = to_fraction(self.threshold)
            multiplier = to_fraction(self.multiplier)
        except (TypeError, ValueError) as exc:
            raise ScheduleError(str(exc)) from exc
        if len(rows) < 2:
            raise ScheduleError("a public goods game needs at least two players")
        for i, row in enumerate(rows, start=1):
            if len(row) < 2:
                raise ScheduleError(f"player {i} needs at least two strategies")
            if row[-1] != 0:
                raise ScheduleError(f"the least cooperative strategy of player {i} must contribute 0")
            if any(b >= a for a, b in zip(row, row[1:])):
                raise ScheduleError(f"contributions of player {i} must decrease strictly")
        if threshold <= 0:
            raise ScheduleError("the threshold must be positive")
        if multiplier <= 0:
            raise ScheduleError("the multiplier must be positive")
        object.__setattr__(self, "contributions", rows)
        object.__setattr__(self, "threshold", threshold)
        object.__setattr__(self, "multiplier", multiplier)

    @property
    def n(self) -> int:
        return len(self.contributions)

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(len(row) for row in self.contributions)

    def contribution(self, i: int, k: int) -> Fraction:
        return self.contributions[i - 1][k - 1]

    def total(self, s: Sequence[int]) -> Fraction:
        return sum((self.contribution(i, k) for i, k in enumerate(s, start=1)), Fraction(0))

    @property
    def meaningful(self) -> bool:
        """Whether full cooperation reaches the threshold at all."""
        return self.total((1,) * self.n) >= self.threshold

    def utility(self, i: int, s: Sequence[int]) -> Fraction:
        first = self.contribution(i, 1)
        pool = self.total(s)
        if pool < self.threshold:
            return first
        return first - self.contribution(i, s[i - 1]) + self.multiplier / self.n * pool

    def to_json(self) -> dict:
        return {
            "contributions": [[format_rational(x) for x in row] for row in self.contributions],
            "threshold": format_rational(self.threshold),
            "multiplier": format_rational(self.multiplier),
        }


@dataclass(frozen=True)
class PublicGoodsGame:
    schedule: ContributionSchedule
    game: Game


def build_pgg(sched: ContributionSchedule) -> PublicGoodsGame:
    return PublicGoodsGame(sched, Game.from_function(sched.counts, sched.utility))


@dataclass
class OrderReport:
    passed: bool
    blocks_checked: int
    violations: list[PdViolation] = field(default_factory=list)
    warning: str | None = None

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "blocks_checked": self.blocks_checked,
            "violations": [v.to_json() for v in self.violations[:20]],
            "violation_count": len(self.violations),
            "warning": self.warning,
        }


def validate_order_c(p: PublicGoodsGame, max_fixed: int | None = None) -> OrderReport:
    """Every funded restricted game must be a prisoner's dilemma.

    Restricted games here are contiguous strategy windows, not only suffixes:
    a suffix always keeps the zero contribution, so with at most ``n - 2``
    players fixed it would rarely reach the threshold at all. A window game
    is funded when the fixed contributions plus each free player's least
    cooperative contribution in its window reach the threshold. A contiguous
    2x2 block of players ``i, j`` (the rest held fixed) lies in some funded
    window game exactly when its own least cooperative corner is funded, so
    the check runs over those blocks. ``max_fixed`` is accepted for symmetry
    with the other verifiers; single-strategy windows already reach every
    block.
    """
    sched = p.schedule
    g = p.game
    report = OrderReport(True, 0)
    if not sched.meaningful:
        report.warning = "game meaningless: full cooperation does not reach the threshold"
        return report
    for i, j in itertools.combinations(range(1, g.n + 1), 2):
        for corner in g.profiles():
            if corner[i - 1] == g.counts[i - 1] or corner[j - 1] == g.counts[j - 1]:
                continue
            worst = list(corner)
            worst[i - 1] += 1
            worst[j - 1] += 1
            if sched.total(worst) < sched.threshold:
                continue
            report.blocks_checked += 1
            label = chain_failure(block(g, i, j, corner))
            if label is not None:
                report.passed = False
                report.violations.append(PdViolation((i, j), corner, label))
    return report


def theorem3_amounts(p: PublicGoodsGame, eps_ladder=None) -> LosingContract:
    return telescoped_amounts(p.game, eps_ladder, scheme="theorem2-reduced")


def verify_theorem3(
    p: PublicGoodsGame, c: LosingContract | None = None, max_fixed: int | None = None
) -> TheoremReport:
    """Reduced contract on a public goods game, plus all-or-void signing.

    The contract binds only if everybody signs; otherwise every player ends up
    with the all-defect payoff ``u_i(s*)``.
    """
    g = p.game
    if c is None:
        c = theorem3_amounts(p)
    report = verify_reduced(g, c, max_fixed, "theorem3")
    order = validate_order_c(p, max_fixed)
    report.extra["order_c"] = order.to_json()
    if not order.passed:
        report.fail("order-c", None, g.cooperative, detail=f"{len(order.violations)} blocks fail")
    try:
        signing = signing_game(g, c, reduced=True, baseline="all-defect")
    except IndeterminateError as exc:
        report.fail("signing", None, g.cooperative, detail=str(exc))
    else:
        report.extra["signing"] = {
            "sign_dominant": signing.sign_dominant,
            "dominant": list(signing.dominant),
            "strict_gain_at_all_sign": list(signing.strict_gain),
        }
        if not signing.sign_dominant:
            report.fail("signing", None, g.cooperative, detail="signing is not dominant")
    return report


def tilde_matches_theorem1(p: PublicGoodsGame, eps_ladder=None) -> list[tuple[int, int]]:
    """Pairs ``(i, k)`` where the tilde amount (others cooperating) differs
    from the telescoped amount; empty when they coincide everywhere."""
    g = p.game
    tilde = tilde_amounts(g, eps_ladder).at_cooperation()
    theorem = telescoped_amounts(g, eps_ladder)
    return [
        (i, k)
        for i in range(1, g.n + 1)
        for k in range(2, g.counts[i - 1] + 1)
        if tilde.amount(i, k) != theorem.amount(i, k)
    ]
