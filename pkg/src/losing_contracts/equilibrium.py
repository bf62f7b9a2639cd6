"""Nash and strong Nash certification by exhaustive enumeration.

Strong Nash uses transferable utility: a coalition blocks a profile when some
joint deviation raises the sum of its members' payoffs. In strict mode a
deviation that merely keeps the sum equal also blocks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .game import AnyGame, Profile, as_view, format_rational


@dataclass(frozen=True)
class Counterexample:
    """A coalition and its joint deviation, with the coalition's sums."""

    coalition: tuple[int, ...]
    deviation: tuple[int, ...]
    before: Fraction
    after: Fraction

    def apply(self, profile: Sequence[int]) -> Profile:
        out = list(profile)
        for i, k in zip(self.coalition, self.deviation):
            out[i - 1] = k
        return tuple(out)

    def to_json(self) -> dict:
        return {
            "coalition": list(self.coalition),
            "deviation": list(self.deviation),
            "before": format_rational(self.before),
            "after": format_rational(self.after),
        }


@dataclass(frozen=True)
class EquilibriumReport:
    profile: Profile
    is_nash: bool
    is_unique_nash: bool
    is_strong: bool
    strict: bool
    counterexample: Counterexample | None

    def to_json(self) -> dict:
        return {
            "profile": list(self.profile),
            "is_nash": self.is_nash,
            "is_unique_nash": self.is_unique_nash,
            "is_strong": self.is_strong,
            "strict": self.strict,
            "counterexample": self.counterexample and self.counterexample.to_json(),
        }


def is_nash(g: AnyGame, s: Sequence[int]) -> bool:
    """No single player has an available strictly better reply."""
    view = as_view(g)
    view.check_profile(s)
    base = view.base
    flat = base.index(s)
    for i in range(1, base.n + 1):
        row = base.payoffs[i - 1]
        stride = base.strides[i - 1]
        current = row[flat]
        for k in view.available(i):
            if row[flat + (k - s[i - 1]) * stride] > current:
                return False
    return True


def all_nash(g: AnyGame) -> list[Profile]:
    """Every pure Nash profile, in canonical profile order."""
    view = as_view(g)
    base = view.base
    lo, hi = view.bounds
    return [base.profile_at(f) for f in base.kernel_payload.nash(base.strides, lo, hi)]


def strong_counterexample(
    g: AnyGame,
    s: Sequence[int],
    strict: bool = True,
    alias: Sequence[int] | None = None,
    strict_for: Sequence[int] | None = None,
) -> Counterexample | None:
    """First blocking coalition deviation from ``s`` in canonical order.

    Coalitions are drawn from the players of the (restricted) game, by size
    and then lexicographically; each coalition's deviations run mixed-radix
    over its available strategies.

    ``alias`` maps each flat profile index to the index of the profile that is
    actually played; deviations played as ``s`` itself are skipped. With
    ``strict_for`` only coalitions containing one of those players must lose
    strictly, the rest merely must not gain.
    """
    view = as_view(g)
    view.check_profile(s)
    base = view.base
    lo, hi = view.bounds
    payload = base.kernel_payload
    eligible = [i - 1 for i in view.players]
    picky = None if strict_for is None else [i - 1 for i in strict_for]
    hit = payload.strong(
        base.strides, lo, hi, eligible, [v - 1 for v in s], strict, alias, picky
    )
    if hit is None:
        return None
    members, dev, before, after = hit
    d = payload.denominator
    return Counterexample(
        tuple(m + 1 for m in members),
        tuple(k + 1 for k in dev),
        Fraction(before, d),
        Fraction(after, d),
    )


def is_strong_nash(g: AnyGame, s: Sequence[int], strict: bool = True) -> EquilibriumReport:
    s = tuple(s)
    found = strong_counterexample(g, s, strict)
    nash = is_nash(g, s)
    return EquilibriumReport(
        profile=s,
        is_nash=nash,
        is_unique_nash=nash and all_nash(g) == [s],
        is_strong=found is None,
        strict=strict,
        counterexample=found,
    )


def strong_counterexample_pruned(
    g: AnyGame, s: Sequence[int], strict: bool = True
) -> Counterexample | None:
    """Vectorized strong-Nash scan that skips hopeless coalitions.

    A coalition cannot block when the sum of its members' best payoffs over
    its deviation box is already below (strict) or at most (non-strict) its
    current sum. Returns exactly what :func:`strong_counterexample` returns.
    """
    view = as_view(g)
    view.check_profile(s)
    base = view.base
    ints, denom = base.scaled
    pay = np.array(ints, dtype=object)
    target = base.index(s)
    lo, hi = view.bounds
    for size in range(1, len(view.players) + 1):
        for members in itertools.combinations(view.players, size):
            idx = np.array([target], dtype=np.int64)
            for m in members:
                stride = base.strides[m - 1]
                steps = np.arange(lo[m - 1], hi[m - 1] + 1, dtype=np.int64) - (s[m - 1] - 1)
                idx = (idx[:, None] + steps[None, :] * stride).ravel()
            rows = pay[[m - 1 for m in members]]
            before = sum(ints[m - 1][target] for m in members)
            best = sum(max(rows[t][idx]) for t in range(size))
            if best < before or (not strict and best == before):
                continue
            sums = rows[:, idx].sum(axis=0)
            bad = (sums > before) | ((sums == before) & strict)
            bad &= idx != target
            hits = np.flatnonzero(bad)
            if hits.size:
                flat = int(idx[hits[0]])
                prof = base.profile_at(flat)
                return Counterexample(
                    members,
                    tuple(prof[m - 1] for m in members),
                    Fraction(before, denom),
                    Fraction(int(sums[hits[0]]), denom),
                )
    return None


def dominant_solve(g: AnyGame) -> Profile | None:
    """The profile of strictly dominant strategies, if every player has one."""
    view = as_view(g)
    base = view.base
    choice = []
    for i in range(1, base.n + 1):
        avail = list(view.available(i))
        if len(avail) == 1:
            choice.append(avail[0])
            continue
        others = [view.available(j) if j != i else (1,) for j in range(1, base.n + 1)]
        row = base.payoffs[i - 1]
        stride = base.strides[i - 1]
        winner = None
        for k in avail:
            beats = True
            for prof in itertools.product(*others):
                anchor = base.index(prof) - stride
                mine = row[anchor + k * stride]
                if any(row[anchor + kk * stride] >= mine for kk in avail if kk != k):
                    beats = False
                    break
            if beats:
                winner = k
                break
        if winner is None:
            return None
        choice.append(winner)
    return tuple(choice)
