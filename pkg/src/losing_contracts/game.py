"""Exact finite normal-form games, profiles and restricted games.

Players and strategies are 1-based everywhere in the public API. Strategy 1 is
the most cooperative choice of a player and strategy ``k_i`` the least
cooperative one. Payoffs live in a dense tensor of :class:`fractions.Fraction`
flattened mixed-radix with player 1 as the most significant digit.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, Iterator, Mapping, Sequence, Union

from .errors import InvalidRestrictionError, RangeError, ShapeError

Profile = tuple[int, ...]
Coalition = tuple[int, ...]


def to_fraction(value) -> Fraction:
    """Convert an exact number (int, Fraction or ``"p/q"`` string) to Fraction.

    Floats are refused: every result in this package hinges on strict
    inequalities and binary floating point would silently break them.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not payoffs")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"expected an exact number, got {type(value).__name__}")


@dataclass(frozen=True)
class Game:
    """A finite game ``<N, (S_i), (u_i)>`` with an exact payoff tensor.

    ``payoffs[i]`` holds the utilities of player ``i + 1`` for every profile in
    mixed-radix order.
    """

    counts: tuple[int, ...]
    payoffs: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        counts = tuple(int(k) for k in self.counts)
        if len(counts) < 2:
            raise ShapeError(f"a game needs at least 2 players, got {len(counts)}")
        if any(k < 2 for k in counts):
            raise ShapeError(f"every player needs at least 2 strategies, got {counts}")
        size = math.prod(counts)
        rows = tuple(tuple(to_fraction(x) for x in row) for row in self.payoffs)
        if len(rows) != len(counts):
            raise ShapeError(f"expected {len(counts)} payoff rows, got {len(rows)}")
        for i, row in enumerate(rows):
            if len(row) != size:
                raise ShapeError(
                    f"payoff row of player {i + 1} has {len(row)} entries, expected {size}"
                )
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "payoffs", rows)

    def __hash__(self):
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.counts, self.payoffs))

    @classmethod
    def from_function(
        cls, counts: Sequence[int], utility: Callable[[int, Profile], object]
    ) -> Game:
        """Build a game from ``utility(player, profile)`` (both 1-based)."""
        counts = tuple(counts)
        profiles = list(itertools.product(*(range(1, k + 1) for k in counts)))
        return cls(
            counts,
            tuple(
                tuple(to_fraction(utility(i, s)) for s in profiles)
                for i in range(1, len(counts) + 1)
            ),
        )

    @classmethod
    def from_cells(cls, counts: Sequence[int], cells: Mapping[Profile, Sequence]) -> Game:
        """Build a game from ``{profile: (u_1, ..., u_n)}`` covering every profile."""
        counts = tuple(counts)
        missing = [
            s for s in itertools.product(*(range(1, k + 1) for k in counts)) if s not in cells
        ]
        if missing:
            raise ShapeError(f"no payoffs given for profile {missing[0]}")
        return cls.from_function(counts, lambda i, s: cells[s][i - 1])

    @property
    def n(self) -> int:
        return len(self.counts)

    @property
    def size(self) -> int:
        return len(self.payoffs[0])

    @cached_property
    def strides(self) -> tuple[int, ...]:
        strides = [1] * self.n
        for i in range(self.n - 2, -1, -1):
            strides[i] = strides[i + 1] * self.counts[i + 1]
        return tuple(strides)

    @property
    def cooperative(self) -> Profile:
        """The joint-cooperation profile ``E = (1, ..., 1)``."""
        return (1,) * self.n

    @property
    def all_defect(self) -> Profile:
        """The all-defect profile ``s* = (k_1, ..., k_n)``."""
        return self.counts

    def check_player(self, i: int) -> None:
        if not 1 <= i <= self.n:
            raise RangeError(f"player {i} out of range 1..{self.n}")

    def index(self, profile: Sequence[int]) -> int:
        if len(profile) != self.n:
            raise RangeError(f"profile {tuple(profile)} has {len(profile)} entries, expected {self.n}")
        flat = 0
        for pos, (s, k, stride) in enumerate(zip(profile, self.counts, self.strides)):
            if not 1 <= s <= k:
                raise RangeError(f"strategy {s} of player {pos + 1} out of range 1..{k}")
            flat += (s - 1) * stride
        return flat

    def profile_at(self, flat: int) -> Profile:
        out = []
        for stride, k in zip(self.strides, self.counts):
            out.append(flat // stride % k + 1)
        return tuple(out)

    def payoff(self, i: int, profile: Sequence[int]) -> Fraction:
        self.check_player(i)
        return self.payoffs[i - 1][self.index(profile)]

    def payoff_vector(self, profile: Sequence[int]) -> tuple[Fraction, ...]:
        flat = self.index(profile)
        return tuple(row[flat] for row in self.payoffs)

    def profiles(self) -> Iterator[Profile]:
        return itertools.product(*(range(1, k + 1) for k in self.counts))

    @cached_property
    def totals(self) -> tuple[Fraction, ...]:
        """Sum of all players' payoffs at every flat index."""
        return tuple(sum(col) for col in zip(*self.payoffs))

    @cached_property
    def scaled(self) -> tuple[tuple[tuple[int, ...], ...], int]:
        """Integer payoff tensor and the common denominator it was scaled by.

        Order comparisons and sums on the scaled tensor agree exactly with the
        rational ones.
        """
        denom = 1
        for row in self.payoffs:
            for x in row:
                denom = math.lcm(denom, x.denominator)
        ints = tuple(tuple(int(x * denom) for x in row) for row in self.payoffs)
        return ints, denom

    @cached_property
    def kernel_payload(self):
        from . import kernels

        return kernels.prepare(self)

    @cached_property
    def full_view(self) -> RestrictedGame:
        return RestrictedGame(self, (), (1,) * self.n)

    def to_json(self) -> dict:
        return {
            "players": self.n,
            "strategies": list(self.counts),
            "payoffs": [[format_rational(x) for x in row] for row in self.payoffs],
        }

    def digest(self) -> str:
        """Hex digest of the canonical serialization of the game."""
        text = json.dumps(self.to_json(), separators=(",", ":"), sort_keys=True)
        return hashlib.sha256(text.encode()).hexdigest()


def format_rational(x: Fraction) -> int | str:
    """Canonical JSON form of a rational: int when integral, else ``"p/q"``."""
    if x.denominator == 1:
        return x.numerator
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class RestrictedGame:
    """A game with some players pinned and the rest limited to suffixes.

    ``fixed`` lists ``(player, strategy)`` pairs for the induced-game coalition
    A. ``starts[i - 1]`` is the most cooperative strategy still available to a
    non-fixed player ``i``; its available set is ``starts[i - 1] .. k_i``.
    Entries of ``starts`` for fixed players are ``None``.
    """

    base: Game
    fixed: tuple[tuple[int, int], ...]
    starts: tuple[int | None, ...]

    @cached_property
    def _fixed_map(self) -> dict[int, int]:
        return dict(self.fixed)

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def counts(self) -> tuple[int, ...]:
        return self.base.counts

    @cached_property
    def players(self) -> tuple[int, ...]:
        """Players of the restricted game, i.e. those outside the fixed coalition."""
        return tuple(i for i in range(1, self.n + 1) if i not in self._fixed_map)

    @cached_property
    def bounds(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """0-based inclusive ``(lo, hi)`` strategy bounds per player."""
        lo, hi = [], []
        for i in range(1, self.n + 1):
            if i in self._fixed_map:
                lo.append(self._fixed_map[i] - 1)
                hi.append(self._fixed_map[i] - 1)
            else:
                lo.append(self.starts[i - 1] - 1)
                hi.append(self.counts[i - 1] - 1)
        return tuple(lo), tuple(hi)

    def available(self, i: int) -> range:
        self.base.check_player(i)
        lo, hi = self.bounds
        return range(lo[i - 1] + 1, hi[i - 1] + 2)

    @property
    def cooperative(self) -> Profile:
        """Most cooperative available profile (fixed players at their strategy)."""
        return tuple(lo + 1 for lo in self.bounds[0])

    @property
    def all_defect(self) -> Profile:
        return tuple(hi + 1 for hi in self.bounds[1])

    def contains(self, profile: Sequence[int]) -> bool:
        lo, hi = self.bounds
        return len(profile) == self.n and all(
            l + 1 <= s <= h + 1 for s, l, h in zip(profile, lo, hi)
        )

    def check_profile(self, profile: Sequence[int]) -> None:
        self.base.index(profile)
        if not self.contains(profile):
            raise RangeError(f"profile {tuple(profile)} is not available in the restricted game")

    def payoff(self, i: int, profile: Sequence[int]) -> Fraction:
        self.check_profile(profile)
        return self.base.payoff(i, profile)

    def profiles(self) -> Iterator[Profile]:
        return itertools.product(*(self.available(i) for i in range(1, self.n + 1)))

    def profile_count(self) -> int:
        lo, hi = self.bounds
        return math.prod(h - l + 1 for l, h in zip(lo, hi))

    @property
    def key(self) -> tuple:
        return (self.fixed, self.starts)

    def describe(self) -> dict:
        return {
            "fixed": {str(i): s for i, s in self.fixed},
            "suffix_start": {str(i): self.starts[i - 1] for i in self.players},
        }


AnyGame = Union[Game, RestrictedGame]


def as_view(g: AnyGame) -> RestrictedGame:
    return g.full_view if isinstance(g, Game) else g


def payoff(g: AnyGame, i: int, s: Sequence[int]) -> Fraction:
    return g.payoff(i, s)


def iterate_profiles(g: AnyGame) -> Iterator[Profile]:
    """Every available profile once, player 1 most significant, cooperative first."""
    return g.profiles()


def _normalize_fixed(n: int, fixed) -> dict[int, int]:
    if fixed is None:
        return {}
    items = fixed.items() if isinstance(fixed, Mapping) else fixed
    out: dict[int, int] = {}
    for i, s in items:
        if not 1 <= i <= n:
            raise RangeError(f"player {i} out of range 1..{n}")
        if i in out and out[i] != s:
            raise InvalidRestrictionError(f"player {i} fixed twice")
        out[int(i)] = int(s)
    return out


def restrict(
    g: AnyGame,
    fixed: Mapping[int, int] | Iterable[tuple[int, int]] | None = None,
    suffix_start: Sequence[int | None] | Mapping[int, int] | None = None,
) -> RestrictedGame:
    """Restrict ``g`` by fixing a coalition and cutting strategy suffixes.

    Restricting an already-restricted game composes: fixed coalitions are
    merged and suffix starts take the pointwise maximum.
    """
    base = g if isinstance(g, Game) else g.base
    n = base.n
    prior_fixed = {} if isinstance(g, Game) else dict(g.fixed)
    prior_starts = (1,) * n if isinstance(g, Game) else g.starts

    new_fixed = _normalize_fixed(n, fixed)
    for i, s in new_fixed.items():
        if not 1 <= s <= base.counts[i - 1]:
            raise RangeError(f"strategy {s} of player {i} out of range 1..{base.counts[i - 1]}")
        if i in prior_fixed and prior_fixed[i] != s:
            raise InvalidRestrictionError(f"player {i} is already fixed at {prior_fixed[i]}")
        if i not in prior_fixed and s < prior_starts[i - 1]:
            raise InvalidRestrictionError(
                f"strategy {s} of player {i} was already removed by the restriction"
            )
    all_fixed = {**prior_fixed, **new_fixed}
    if all_fixed and len(all_fixed) > n - 2:
        raise InvalidRestrictionError(
            f"an induced game keeps at least two players free; {len(all_fixed)} of {n} fixed"
        )

    if suffix_start is None:
        requested = {}
    elif isinstance(suffix_start, Mapping):
        requested = dict(suffix_start)
    else:
        if len(suffix_start) != n:
            raise RangeError(f"suffix_start needs {n} entries, got {len(suffix_start)}")
        requested = {i + 1: s for i, s in enumerate(suffix_start) if s is not None}

    starts: list[int | None] = []
    for i in range(1, n + 1):
        if i in all_fixed:
            starts.append(None)
            continue
        start = requested.get(i, 1)
        if not 1 <= start <= base.counts[i - 1]:
            raise RangeError(
                f"suffix start {start} of player {i} out of range 1..{base.counts[i - 1]}"
            )
        starts.append(max(start, prior_starts[i - 1]))
    return RestrictedGame(base, tuple(sorted(all_fixed.items())), tuple(starts))


def enumerate_restricted_games(
    g: Game, max_fixed: int | None = None
) -> Iterator[RestrictedGame]:
    """Every suffix restriction with at most ``max_fixed`` fixed players.

    Order: coalition size ascending, coalitions lexicographic, fixed profiles
    mixed-radix, suffix starts mixed-radix. A suffix start may equal ``k_i``,
    which leaves that player only its least cooperative strategy.
    """
    n = g.n
    limit = n - 2 if max_fixed is None else min(max_fixed, n - 2)
    for size in range(0, max(limit, 0) + 1):
        for coalition in itertools.combinations(range(1, n + 1), size):
            free = [i for i in range(1, n + 1) if i not in coalition]
            for s_a in itertools.product(*(range(1, g.counts[i - 1] + 1) for i in coalition)):
                fixed = tuple(zip(coalition, s_a))
                for st in itertools.product(*(range(1, g.counts[i - 1] + 1) for i in free)):
                    starts: list[int | None] = [None] * n
                    for i, s in zip(free, st):
                        starts[i - 1] = s
                    yield RestrictedGame(g, fixed, tuple(starts))


def pareto_optimal_transferable(g: Game, s: Sequence[int]) -> bool:
    """True iff ``s`` maximizes the sum of all players' utilities."""
    total = g.totals[g.index(s)]
    return all(t <= total for t in g.totals)


def single_deviation_pareto(g: Game, s: Sequence[int]) -> bool:
    """Pareto test restricted to profiles where exactly one player leaves ``s``."""
    s = tuple(s)
    total = g.totals[g.index(s)]
    for i in range(g.n):
        for k in range(1, g.counts[i] + 1):
            if k == s[i]:
                continue
            other = s[:i] + (k,) + s[i + 1 :]
            if g.totals[g.index(other)] > total:
                return False
    return True


def dominates(g: AnyGame, i: int, k: int, k2: int, strict: bool = False) -> bool:
    """Whether strategy ``k`` of player ``i`` dominates ``k2`` on available profiles."""
    view = as_view(g)
    avail = view.available(i)
    if k not in avail or k2 not in avail:
        raise RangeError(f"strategies {k}, {k2} must both be available to player {i}")
    base = view.base
    row = base.payoffs[i - 1]
    others = [view.available(j) if j != i else (k,) for j in range(1, base.n + 1)]
    stride = base.strides[i - 1]
    for prof in itertools.product(*others):
        a = base.index(prof)
        b = a + (k2 - k) * stride
        if strict and not row[a] > row[b]:
            return False
        if not strict and not row[a] >= row[b]:
            return False
    return True
