"""Prisoner's-dilemma validation and the structural lemmas on concrete games.

A game is an n-player prisoner's dilemma when every two-player game obtained
by fixing the other players' strategies satisfies the classical 2x2 chains on
every pair of contiguous strategies.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import PreconditionError, ShapeError
from .game import AnyGame, Game, as_view, pareto_optimal_transferable

# u[p][a][b]: payoff of the block's player p (0 = row) when the row player
# plays local strategy a and the column player local strategy b (0 = more
# cooperative).
Block = Sequence[Sequence[Sequence[Fraction]]]

CHAIN_LABELS = (
    "u_i(1,2) < u_i(2,2)",
    "u_i(2,2) < u_i(1,1)",
    "u_i(1,1) < u_i(2,1)",
    "u_j(2,1) < u_j(2,2)",
    "u_j(2,2) < u_j(1,1)",
    "u_j(1,1) < u_j(1,2)",
)


def chain_failure(u: Block) -> int | None:
    """Index of the first broken link of the two classical chains, or None."""
    links = (
        (u[0][0][1], u[0][1][1]),
        (u[0][1][1], u[0][0][0]),
        (u[0][0][0], u[0][1][0]),
        (u[1][1][0], u[1][1][1]),
        (u[1][1][1], u[1][0][0]),
        (u[1][0][0], u[1][0][1]),
    )
    for label, (low, high) in enumerate(links):
        if not low < high:
            return label
    return None


def classical_pd_2x2(u: Block) -> bool:
    """Both strict four-term chains of a two-player, two-strategy dilemma."""
    return chain_failure(u) is None


@dataclass(frozen=True)
class PdViolation:
    """A contiguous 2x2 block that is not a classical prisoner's dilemma.

    ``profile`` is the block's cooperative corner: players ``i`` and ``j``
    play their more cooperative strategy of the pair and everybody else
    plays the fixed strategy.
    """

    players: tuple[int, int]
    profile: tuple[int, ...]
    label: int

    @property
    def description(self) -> str:
        return CHAIN_LABELS[self.label]

    def to_json(self) -> dict:
        return {
            "players": list(self.players),
            "profile": list(self.profile),
            "strategies": [self.profile[p - 1] for p in self.players],
            "violated": self.description,
        }


@dataclass(frozen=True)
class PdVerdict:
    is_pd: bool
    first_violation: PdViolation | None = None

    def __bool__(self) -> bool:
        return self.is_pd

    def to_json(self) -> dict:
        return {
            "is_pd": self.is_pd,
            "first_violation": self.first_violation and self.first_violation.to_json(),
        }


def block(g: Game, i: int, j: int, corner: Sequence[int]) -> list:
    """The 2x2 block of players ``i < j`` whose cooperative corner is ``corner``."""
    out = [[[None, None], [None, None]], [[None, None], [None, None]]]
    for a in (0, 1):
        for b in (0, 1):
            s = list(corner)
            s[i - 1] += a
            s[j - 1] += b
            out[0][a][b] = g.payoff(i, s)
            out[1][a][b] = g.payoff(j, s)
    return out


def is_pd_flat(g: AnyGame) -> PdVerdict:
    """Pairwise scan of every contiguous 2x2 block with the others fixed.

    Works on restricted games too: fixed players and players left with a
    single strategy only act as context.
    """
    view = as_view(g)
    base = view.base
    lo, hi = view.bounds
    hit = base.kernel_payload.pd(base.strides, lo, hi)
    if hit is None:
        return PdVerdict(True)
    i, j, flat, label = hit
    return PdVerdict(False, PdViolation((i + 1, j + 1), base.profile_at(flat), label))


def _two_player_violation(g: Game) -> PdViolation | None:
    for k in range(1, g.counts[0]):
        for kk in range(1, g.counts[1]):
            label = chain_failure(block(g, 1, 2, (k, kk)))
            if label is not None:
                return PdViolation((1, 2), (k, kk), label)
    return None


def induced_game(g: Game, fixed: dict[int, int]) -> Game:
    """The game of the remaining players once ``fixed`` players are pinned."""
    free = [i for i in range(1, g.n + 1) if i not in fixed]

    def expand(s):
        full = [0] * g.n
        for i, v in fixed.items():
            full[i - 1] = v
        for i, v in zip(free, s):
            full[i - 1] = v
        return full

    return Game.from_function(
        [g.counts[i - 1] for i in free], lambda p, s: g.payoff(free[p - 1], expand(s))
    )


def is_pd_recursive(g: Game) -> PdVerdict:
    """Literal recursive definition, used as an oracle for :func:`is_pd_flat`.

    Two-player games are checked block by block; larger games recurse into
    every induced game that leaves at least two players free. Repeated induced
    games are memoized.
    """
    memo: dict[Game, bool] = {}

    def subgames(h: Game):
        for size in range(1, h.n - 1):
            for coalition in itertools.combinations(range(1, h.n + 1), size):
                ranges = [range(1, h.counts[i - 1] + 1) for i in coalition]
                for s_a in itertools.product(*ranges):
                    fixed = dict(zip(coalition, s_a))
                    yield fixed, induced_game(h, fixed)

    def holds(h: Game) -> bool:
        if h in memo:
            return memo[h]
        if h.n == 2:
            result = _two_player_violation(h) is None
        else:
            result = all(holds(sub) for _, sub in subgames(h))
        memo[h] = result
        return result

    def witness(h: Game) -> PdViolation:
        if h.n == 2:
            return _two_player_violation(h)
        for fixed, sub in subgames(h):
            if not holds(sub):
                inner = witness(sub)
                free = [i for i in range(1, h.n + 1) if i not in fixed]
                profile = [0] * h.n
                for i, v in fixed.items():
                    profile[i - 1] = v
                for i, v in zip(free, inner.profile):
                    profile[i - 1] = v
                players = (free[inner.players[0] - 1], free[inner.players[1] - 1])
                return PdViolation(players, tuple(profile), inner.label)
        raise AssertionError("unreachable: failing game without failing subgame")

    if holds(g):
        return PdVerdict(True)
    return PdVerdict(False, witness(g))


def _require_pd(g: Game) -> None:
    if not is_pd_flat(g).is_pd:
        raise PreconditionError("not-pd", "the game is not a prisoner's dilemma")


def check_remark2(g: Game) -> bool:
    """Joint cooperation maximizes the payoff sum in a 2x2 game."""
    if g.counts != (2, 2):
        raise ShapeError(f"expected a 2x2 game, got strategy counts {g.counts}")
    coop = g.totals[g.index((1, 1))]
    return all(g.totals[g.index(s)] <= coop for s in ((1, 2), (2, 1), (2, 2)))


def check_lemma3(g: Game) -> bool:
    """Others becoming more cooperative strictly helps every bystander."""
    _require_pd(g)
    rows = g.payoffs
    profiles = list(g.profiles())
    for s in profiles:
        flat = g.index(s)
        for better in itertools.product(*(range(1, v + 1) for v in s)):
            if better == s:
                continue
            moved = g.index(better)
            for j in range(g.n):
                if better[j] == s[j] and not rows[j][moved] > rows[j][flat]:
                    return False
    return True


def check_lemma4(g: Game) -> bool:
    """Everyone prefers joint cooperation to joint defection."""
    _require_pd(g)
    top = max(g.counts)
    if g.counts.count(top) == 1:
        raise PreconditionError(
            "unique-max-strategies", "one player has strictly more strategies than all others"
        )
    worst = g.payoff_vector(g.all_defect)
    best = g.payoff_vector(g.cooperative)
    return all(w < b for w, b in zip(worst, best))


def check_lemma5(g: Game) -> bool:
    """No coalition gains, in sum, from facing the others at full defection.

    For every set A of outsiders leaving at least two and at most n - 1
    players in the coalition, and every joint strategy of the coalition, the
    coalition's sum with A at least cooperative is at most its sum at E.
    """
    _require_pd(g)
    if not pareto_optimal_transferable(g, g.cooperative):
        raise PreconditionError("not-pareto", "joint cooperation is not Pareto-optimal")
    coop = g.payoff_vector(g.cooperative)
    for size in range(1, g.n - 1):
        for outsiders in itertools.combinations(range(1, g.n + 1), size):
            members = [i for i in range(1, g.n + 1) if i not in outsiders]
            bound = sum(coop[i - 1] for i in members)
            for s_m in itertools.product(*(range(1, g.counts[i - 1] + 1) for i in members)):
                s = list(g.counts)
                for i, v in zip(members, s_m):
                    s[i - 1] = v
                flat = g.index(s)
                if sum(g.payoffs[i - 1][flat] for i in members) > bound:
                    return False
    return True


def check_lemma7(g: Game) -> bool:
    """Any opponent cooperating at least as deeply lifts i above u_i(s*)."""
    _require_pd(g)
    defect = g.payoff_vector(g.all_defect)
    for s in g.profiles():
        for i in range(1, g.n + 1):
            k = s[i - 1]
            if k == g.counts[i - 1]:
                continue
            need = g.counts[i - 1] - k
            deep = any(
                g.counts[j] - s[j] >= need for j in range(g.n) if j != i - 1
            )
            if deep and not defect[i - 1] < g.payoff(i, s):
                return False
    return True


def check_lemma6(g: Game, max_fixed: int | None = None):
    """First enumerated restricted game that is not a dilemma, or None."""
    from .game import enumerate_restricted_games

    _require_pd(g)
    for rg in enumerate_restricted_games(g, max_fixed):
        if not is_pd_flat(rg).is_pd:
            return rg
    return None
