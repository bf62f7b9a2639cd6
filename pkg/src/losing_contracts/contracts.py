"""Losing contracts: construction, application and certification.

A losing contract makes player ``i`` forfeit ``r_{i,k}`` whenever they play
strategy ``k``; nothing is transferred to anybody. The reduced variant clips
each forfeit so no payoff falls below the all-defect payoff ``u_i(s*)``
unless it was already below it, and reassigns a lone deepest cooperator to the
depth of the runner-up.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .equilibrium import Counterexample, all_nash, is_nash, strong_counterexample
from .errors import IndeterminateError, InvalidEpsilonError, PreconditionError, ShapeError
from .game import (
    Game,
    Profile,
    RestrictedGame,
    enumerate_restricted_games,
    format_rational,
    to_fraction,
)
from .pd import is_pd_flat

SCHEMES = ("lemma1", "theorem1", "theorem2-reduced", "tilde", "custom")


def _nested(counts: Sequence[int], value, default) -> tuple[tuple[Fraction, ...], ...]:
    """Normalize a per-(i, k) table for k = 2..k_i from None, a scalar or nested lists."""
    if value is None:
        return tuple(tuple(to_fraction(default(i, k)) for k in range(2, c + 1))
                     for i, c in enumerate(counts, start=1))
    if not isinstance(value, (list, tuple)):
        x = to_fraction(value)
        return tuple((x,) * (c - 1) for c in counts)
    if len(value) != len(counts) or any(len(row) != c - 1 for row, c in zip(value, counts)):
        raise ShapeError("per-strategy table must hold k_i - 1 entries for each player")
    return tuple(tuple(to_fraction(x) for x in row) for row in value)


@dataclass(frozen=True)
class LosingContract:
    """Forfeits ``amounts[i-1][k-2] = r_{i,k}`` for k = 2..k_i; ``r_{i,1} = 0``.

    Construction does not police signs so that raw formula output can be
    represented; :meth:`validate` checks the usual invariants.
    """

    amounts: tuple[tuple[Fraction, ...], ...]
    epsilons: tuple[tuple[Fraction, ...], ...] | None = None
    scheme: str = "custom"

    def __post_init__(self):
        object.__setattr__(
            self, "amounts", tuple(tuple(to_fraction(x) for x in row) for row in self.amounts)
        )
        if self.epsilons is not None:
            eps = tuple(tuple(to_fraction(x) for x in row) for row in self.epsilons)
            if [len(r) for r in eps] != [len(r) for r in self.amounts]:
                raise ShapeError("epsilons and amounts have different shapes")
            object.__setattr__(self, "epsilons", eps)

    @classmethod
    def uniform(cls, counts: Sequence[int], amount) -> LosingContract:
        return cls(_nested(counts, amount, None))

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(len(row) + 1 for row in self.amounts)

    def amount(self, i: int, k: int) -> Fraction:
        return Fraction(0) if k == 1 else self.amounts[i - 1][k - 2]

    def check_shape(self, g: Game) -> None:
        if self.counts != g.counts:
            raise ShapeError(f"contract for strategy counts {self.counts} used on a game with {g.counts}")

    def validate(self, ladder: bool = False) -> None:
        """Raise unless amounts are nonnegative and not all zero.

        With ``ladder`` the epsilons and the amounts must also increase
        strictly in k.
        """
        flat = [x for row in self.amounts for x in row]
        if any(x < 0 for x in flat):
            raise ValueError("losing amounts must be nonnegative")
        if not any(x > 0 for x in flat):
            raise ValueError("a losing contract needs at least one positive amount")
        if self.epsilons is not None and any(e <= 0 for row in self.epsilons for e in row):
            raise InvalidEpsilonError("epsilons must be positive")
        if ladder:
            for row in self.amounts:
                if any(b <= a for a, b in zip(row, row[1:])):
                    raise ValueError("amounts must increase strictly with k")
            if self.epsilons is not None:
                _check_ladder(self.epsilons)

    def to_json(self) -> dict:
        eps = self.epsilons or tuple(() for _ in self.amounts)
        return {
            "scheme": self.scheme,
            "epsilons": [[format_rational(x) for x in row] for row in eps],
            "amounts": [[format_rational(x) for x in row] for row in self.amounts],
        }


def _check_ladder(eps) -> None:
    for row in eps:
        if row and row[0] <= 0:
            raise InvalidEpsilonError("epsilons must be positive")
        if any(b <= a for a, b in zip(row, row[1:])):
            raise InvalidEpsilonError("epsilons must increase strictly with k")


def default_ladder(counts: Sequence[int]) -> tuple[tuple[Fraction, ...], ...]:
    """``eps_{i,k} = k - 1``; for two-strategy players this is the unit epsilon."""
    return _nested(counts, None, lambda i, k: k - 1)


def max_gain(g: Game, i: int, k_from: int, k_to: int) -> Fraction:
    """``max_{s_-i} u_i(k_to, s_-i) - u_i(k_from, s_-i)``."""
    row = g.payoffs[i - 1]
    stride = g.strides[i - 1]
    shift = (k_to - k_from) * stride
    others = [range(1, c + 1) if j != i else (k_from,) for j, c in enumerate(g.counts, start=1)]
    return max(row[g.index(s) + shift] - row[g.index(s)] for s in itertools.product(*others))


def lemma1_amounts(g: Game, eps=None) -> LosingContract:
    """``r_{i,k} = max_{s_-i}[u_i(k, s_-i) - u_i(1, s_-i)] + eps_{i,k}`` (default eps 1)."""
    eps = _nested(g.counts, eps, lambda i, k: 1)
    if any(e <= 0 for row in eps for e in row):
        raise InvalidEpsilonError("epsilons must be positive")
    amounts = tuple(
        tuple(max_gain(g, i, 1, k) + eps[i - 1][k - 2] for k in range(2, g.counts[i - 1] + 1))
        for i in range(1, g.n + 1)
    )
    return LosingContract(amounts, eps, "lemma1")


def theorem1_amounts(g: Game, eps_ladder=None, scheme: str = "theorem1") -> LosingContract:
    """Telescoped adjacent gains plus a strictly increasing epsilon ladder."""
    if not is_pd_flat(g).is_pd:
        raise PreconditionError("not-pd", "the game is not a prisoner's dilemma")
    return telescoped_amounts(g, eps_ladder, scheme)


def telescoped_amounts(g: Game, eps_ladder=None, scheme: str = "theorem1") -> LosingContract:
    """The telescoped formula without the dilemma precondition.

    Threshold public-goods games are not dilemmas below the threshold but
    reuse the same amounts.
    """
    eps = default_ladder(g.counts) if eps_ladder is None else _nested(g.counts, eps_ladder, None)
    _check_ladder(eps)
    amounts = []
    for i in range(1, g.n + 1):
        total = Fraction(0)
        row = []
        for k in range(2, g.counts[i - 1] + 1):
            total += max_gain(g, i, k - 1, k)
            row.append(total + eps[i - 1][k - 2])
        amounts.append(tuple(row))
    return LosingContract(tuple(amounts), eps, scheme)


def apply_losing(g: Game, c: LosingContract) -> Game:
    """The modified game ``u_i(k, s_-i) - r_{i,k}``."""
    c.check_shape(g)
    return Game.from_function(g.counts, lambda i, s: g.payoff(i, s) - c.amount(i, s[i - 1]))


def in_feasible_region(g: Game, c: LosingContract) -> bool:
    """Every payoff touched by a nonzero amount ends strictly below cooperating."""
    c.check_shape(g)
    for i in range(1, g.n + 1):
        row = g.payoffs[i - 1]
        stride = g.strides[i - 1]
        for k in range(2, g.counts[i - 1] + 1):
            r = c.amount(i, k)
            if r == 0:
                continue
            for s in g.profiles():
                if s[i - 1] != 1:
                    continue
                flat = g.index(s)
                if not row[flat + (k - 1) * stride] - r < row[flat]:
                    return False
    return True


def optimizes_game(g: Game, modified: Game, e: Sequence[int] | None = None) -> bool:
    """``e`` is Nash in ``modified`` and nobody's payoff at ``e`` went down."""
    e = tuple(e or g.cooperative)
    if not is_nash(modified, e):
        return False
    return all(b >= a for a, b in zip(g.payoff_vector(e), modified.payoff_vector(e)))


def optimizes(g: Game, c: LosingContract, e: Sequence[int] | None = None) -> bool:
    return optimizes_game(g, apply_losing(g, c), e)


def compensate(counts: Sequence[int], s: Sequence[int]) -> Profile:
    """Reassign a lone deepest cooperator to the runner-up's cooperation depth."""
    depth = [k - v for k, v in zip(counts, s)]
    top = max(depth)
    if depth.count(top) != 1:
        return tuple(s)
    i = depth.index(top)
    runner_up = max(d for j, d in enumerate(depth) if j != i)
    out = list(s)
    out[i] = counts[i] - runner_up
    return tuple(out)


@dataclass(frozen=True)
class ReducedEvaluator:
    """Reduced amounts ``r*`` and post-contract payoffs ``u*``."""

    base: Game
    contract: LosingContract

    def __post_init__(self):
        self.contract.check_shape(self.base)

    @cached_property
    def baseline(self) -> tuple[Fraction, ...]:
        return self.base.payoff_vector(self.base.all_defect)

    def reduced_amount(self, i: int, s: Sequence[int]) -> Fraction:
        """Three-case reduced amount at the (already compensated) profile ``s``."""
        u = self.base.payoff(i, s)
        r = self.contract.amount(i, s[i - 1])
        floor = self.baseline[i - 1]
        if floor < u - r:
            return r
        if floor < u:
            return u - floor
        return Fraction(0)

    def payoff_cases(self, i: int, s: Sequence[int]) -> Fraction:
        return self.base.payoff(i, s) - self.reduced_amount(i, s)

    def payoff_closed(self, i: int, s: Sequence[int]) -> Fraction:
        """``max{u - r, min{u(s*), u}}`` at the (already compensated) profile ``s``."""
        u = self.base.payoff(i, s)
        r = self.contract.amount(i, s[i - 1])
        return max(u - r, min(self.baseline[i - 1], u))

    def payoff(self, i: int, s: Sequence[int]) -> Fraction:
        return self.payoff_closed(i, compensate(self.base.counts, s))

    @cached_property
    def game(self) -> Game:
        """The reduced modified game, compensation included."""
        return Game.from_function(self.base.counts, self.payoff)

    @cached_property
    def alias(self) -> tuple[int, ...]:
        """Flat index of the profile actually played after compensation."""
        g = self.base
        return tuple(g.index(compensate(g.counts, g.profile_at(f))) for f in range(g.size))


def reduced_payoff(ev: ReducedEvaluator, i: int, s: Sequence[int]) -> Fraction:
    return ev.payoff(i, s)


@dataclass(frozen=True)
class ModifiedGame:
    base: Game
    contract: LosingContract
    reduced: bool = False

    @cached_property
    def game(self) -> Game:
        if self.reduced:
            return ReducedEvaluator(self.base, self.contract).game
        return apply_losing(self.base, self.contract)

    def payoff(self, i: int, s: Sequence[int]) -> Fraction:
        return self.game.payoff(i, s)


@dataclass(frozen=True)
class Failure:
    check: str
    restriction: dict | None
    profile: Profile
    counterexample: Counterexample | None = None
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "restriction": self.restriction,
            "profile": list(self.profile),
            "counterexample": self.counterexample and self.counterexample.to_json(),
            "detail": self.detail,
        }


@dataclass
class TheoremReport:
    theorem: str
    restricted_games: int = 0
    covered: int = 0
    degenerate: int = 0
    failures: list[Failure] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def first_failure(self) -> Failure | None:
        return self.failures[0] if self.failures else None

    def fail(self, *args, **kwargs) -> None:
        self.failures.append(Failure(*args, **kwargs))

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "passed": self.passed,
            "restricted_games": self.restricted_games,
            "covered": self.covered,
            "degenerate": self.degenerate,
            "failures": [f.to_json() for f in self.failures[:20]],
            "failure_count": len(self.failures),
            **self.extra,
        }


def _check_unique_strong(report: TheoremReport, view, target, restriction) -> None:
    nash = all_nash(view)
    if nash != [target]:
        report.fail("unique-nash", restriction, target, detail=f"Nash profiles {nash}")
    found = strong_counterexample(view, target, strict=True)
    if found is not None:
        report.fail("strict-strong-nash", restriction, target, found)


def verify_theorem1(g: Game, c: LosingContract | None = None, max_fixed: int | None = None) -> TheoremReport:
    """Joint cooperation is the unique, strict strong Nash of every restricted game."""
    report = TheoremReport("theorem1")
    report.extra["is_pd"] = is_pd_flat(g).is_pd
    if c is None:
        c = theorem1_amounts(g)
    modified = apply_losing(g, c)
    e = g.cooperative
    if not in_feasible_region(g, c):
        report.fail("feasible-region", None, e)
    if not optimizes_game(g, modified, e):
        report.fail("optimizes", None, e)
    _check_unique_strong(report, modified, e, None)
    for rg in enumerate_restricted_games(modified, max_fixed):
        report.restricted_games += 1
        _check_unique_strong(report, rg, rg.cooperative, rg.describe())
    return report


def covered_players(ev: ReducedEvaluator, rg: RestrictedGame) -> tuple[int, ...]:
    """Free players keeping their full forfeit at joint cooperation.

    Joint cooperation is evaluated after compensation. A player who ends up
    on strategy 1 counts trivially (``r = r* = 0``).
    """
    target = compensate(ev.base.counts, rg.cooperative)
    return tuple(
        i
        for i in rg.players
        if target[i - 1] == 1
        or ev.reduced_amount(i, target) == ev.contract.amount(i, target[i - 1])
    )


def strictly_covered(ev: ReducedEvaluator, view) -> tuple[int, ...]:
    """Free players whose forfeit at joint cooperation leaves them strictly
    above the all-defect payoff (the first case of the reduced amount)."""
    target = compensate(ev.base.counts, view.cooperative)
    return tuple(
        i
        for i in view.players
        if ev.baseline[i - 1] < ev.base.payoff(i, target) - ev.contract.amount(i, target[i - 1])
    )


def verify_theorem2(
    g: Game, c: LosingContract | None = None, max_fixed: int | None = None
) -> TheoremReport:
    """Reduced contract on a prisoner's dilemma; see :func:`verify_reduced`."""
    if c is None:
        c = theorem1_amounts(g, scheme="theorem2-reduced")
    return verify_reduced(g, c, max_fixed, "theorem2")


def verify_reduced(
    g: Game, c: LosingContract, max_fixed: int | None = None, name: str = "theorem2"
) -> TheoremReport:
    """Reduced contract with compensation: strong Nash in full and covered games.

    Joint cooperation must be a strict strong Nash of the full game and of
    every covered restricted game (some free player keeps its full forfeit).
    In the other restricted games it must be a non-strict strong Nash where
    every free player gets exactly ``u_i(s*)``.

    ``extra["refined"]`` additionally records a weaker reading: no coalition
    ever gains, and coalitions containing a strictly covered player lose
    strictly on every deviation that compensation does not map back onto the
    same played profile.
    """
    report = TheoremReport(name)
    report.extra["is_pd"] = is_pd_flat(g).is_pd
    ev = ReducedEvaluator(g, c)
    modified = ev.game
    e = g.cooperative
    report.extra["optimizes"] = optimizes_game(g, modified, e)
    refined: list[Failure] = []

    def refine(view, restriction, strict_for):
        found = strong_counterexample(
            view, view.cooperative, strict=False, alias=ev.alias, strict_for=strict_for
        )
        if found is not None:
            refined.append(Failure("refined-strong-nash", restriction, view.cooperative, found))

    found = strong_counterexample(modified, e, strict=True)
    if found is not None:
        report.fail("strict-strong-nash", None, e, found)
    refine(modified, None, strictly_covered(ev, modified.full_view))
    for rg in enumerate_restricted_games(modified, max_fixed):
        report.restricted_games += 1
        target = rg.cooperative
        covered = covered_players(ev, rg)
        if covered:
            report.covered += 1
            found = strong_counterexample(rg, target, strict=True)
            if found is not None:
                report.fail("covered-strict-strong-nash", rg.describe(), target, found)
            refine(rg, rg.describe(), strictly_covered(ev, rg))
        else:
            report.degenerate += 1
            found = strong_counterexample(rg, target, strict=False)
            if found is not None:
                report.fail("degenerate-strong-nash", rg.describe(), target, found)
            for i in rg.players:
                got = modified.payoff(i, target)
                if got != ev.baseline[i - 1]:
                    report.fail(
                        "degenerate-payoff",
                        rg.describe(),
                        target,
                        detail=f"player {i} gets {got}, all-defect payoff {ev.baseline[i - 1]}",
                    )
    report.extra["refined"] = {
        "passed": not refined,
        "failures": [f.to_json() for f in refined[:20]],
        "failure_count": len(refined),
    }
    return report


@dataclass(frozen=True)
class TildeContract:
    """Context-dependent forfeits ``u_i(k, s_-i) - u_i(1, s_-i) + eps_{i,k}``."""

    base: Game
    epsilons: tuple[tuple[Fraction, ...], ...]

    def amount(self, i: int, k: int, s: Sequence[int]) -> Fraction:
        if k == 1:
            return Fraction(0)
        own = list(s)
        own[i - 1] = 1
        moved = list(s)
        moved[i - 1] = k
        return self.base.payoff(i, moved) - self.base.payoff(i, own) + self.epsilons[i - 1][k - 2]

    def payoff(self, i: int, s: Sequence[int]) -> Fraction:
        """Post-contract payoff ``u_i(1, s_-i) - eps_{i,k}`` for ``k = s_i``."""
        return self.base.payoff(i, s) - self.amount(i, s[i - 1], s)

    def at_cooperation(self) -> LosingContract:
        """The amounts evaluated with every other player cooperating."""
        g = self.base
        rows = tuple(
            tuple(
                self.amount(i, k, tuple(k if j == i else 1 for j in range(1, g.n + 1)))
                for k in range(2, g.counts[i - 1] + 1)
            )
            for i in range(1, g.n + 1)
        )
        return LosingContract(rows, self.epsilons, "tilde")


def tilde_amounts(g: Game, eps_ladder=None) -> TildeContract:
    """Context-dependent amounts; like :func:`telescoped_amounts` no dilemma check."""
    eps = default_ladder(g.counts) if eps_ladder is None else _nested(g.counts, eps_ladder, None)
    _check_ladder(eps)
    return TildeContract(g, eps)


def strong_equilibria(g: Game, strict: bool = True) -> list[Profile]:
    return [s for s in all_nash(g) if strong_counterexample(g, s, strict) is None]


def is_resolution(g: Game, c: LosingContract, reduced: bool = False) -> bool:
    """Whether the contract turns ``g`` into a resolution of it.

    With three or more players: (a) no coalition, facing the rest at their
    least cooperative strategies, beats the per-player worst payoffs of the
    strong equilibria of the modified game, and (b) every player does at least
    as well in every such equilibrium as in every Nash equilibrium of ``g``,
    strictly so in at least one comparison. Two-player games skip (a) and use
    plain Nash equilibria of the modified game.
    """
    modified = ModifiedGame(g, c, reduced).game
    if g.n == 2:
        targets = all_nash(modified)
    else:
        targets = strong_equilibria(modified, strict=True)
    if not targets:
        raise IndeterminateError("the modified game has no equilibrium of the required kind")
    worst = [min(modified.payoff(i, s) for s in targets) for i in range(1, g.n + 1)]
    if g.n >= 3:
        for size in range(1, g.n + 1):
            for coalition in itertools.combinations(range(1, g.n + 1), size):
                bound = sum(worst[i - 1] for i in coalition)
                for s_a in itertools.product(*(range(1, g.counts[i - 1] + 1) for i in coalition)):
                    s = list(g.counts)
                    for i, v in zip(coalition, s_a):
                        s[i - 1] = v
                    if sum(g.payoff(i, s) for i in coalition) > bound:
                        return False
    original = all_nash(g)
    for i in range(1, g.n + 1):
        pairs = [(g.payoff(i, s), modified.payoff(i, t)) for s in original for t in targets]
        if any(a > b for a, b in pairs) or not any(a < b for a, b in pairs):
            return False
    return True


def game_outcome(g: Game) -> tuple[Fraction, ...]:
    """Payoffs of the unique strict strong Nash, else of the unique Nash, else
    the common payoffs of all (non-strict) strong Nash equilibria."""
    strong = strong_equilibria(g, strict=True)
    if len(strong) == 1:
        return g.payoff_vector(strong[0])
    nash = all_nash(g)
    if len(nash) == 1:
        return g.payoff_vector(nash[0])
    weak = {g.payoff_vector(s) for s in nash if strong_counterexample(g, s, strict=False) is None}
    if len(weak) == 1:
        return weak.pop()
    raise IndeterminateError(f"no unique equilibrium: Nash profiles {nash}")


@dataclass(frozen=True)
class SigningReport:
    meta: Game
    dominant: tuple[bool, ...]
    strict_gain: tuple[bool, ...]

    @property
    def sign_dominant(self) -> bool:
        return all(self.dominant) and all(self.strict_gain)

    def to_json(self) -> dict:
        return {
            "sign_dominant": self.sign_dominant,
            "dominant": list(self.dominant),
            "strict_gain_at_all_sign": list(self.strict_gain),
            "meta_game": self.meta.to_json(),
        }


def signing_game(
    g: Game,
    c: LosingContract,
    mode: str = "all-or-void",
    reduced: bool = False,
    baseline: str = "unique-nash",
) -> SigningReport:
    """Sign (strategy 1) or refuse (strategy 2) a contract that binds only if all sign.

    ``baseline`` picks the payoff when the contract is void: the unique Nash
    equilibrium of ``g`` or the all-defect profile.
    """
    if mode != "all-or-void":
        raise ValueError("only all-or-void signing is supported")
    modified = ModifiedGame(g, c, reduced).game
    signed = game_outcome(modified)
    if baseline == "all-defect":
        void = g.payoff_vector(g.all_defect)
    elif baseline == "unique-nash":
        nash = all_nash(g)
        if len(nash) != 1:
            raise IndeterminateError(f"the original game has Nash profiles {nash}")
        void = g.payoff_vector(nash[0])
    else:
        raise ValueError(f"unknown baseline {baseline!r}")
    meta = Game.from_function(
        (2,) * g.n, lambda i, s: signed[i - 1] if all(v == 1 for v in s) else void[i - 1]
    )
    dominant = []
    gain = []
    for i in range(1, g.n + 1):
        ok = True
        for s in meta.profiles():
            if s[i - 1] == 1:
                other = s[: i - 1] + (2,) + s[i:]
                ok &= meta.payoff(i, s) >= meta.payoff(i, other)
        dominant.append(ok)
        gain.append(signed[i - 1] > void[i - 1])
    return SigningReport(meta, tuple(dominant), tuple(gain))
