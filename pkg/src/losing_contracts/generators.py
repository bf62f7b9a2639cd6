"""Seeded random prisoner's dilemmas and public-goods schedules.

Dilemmas follow ``u_i(s) = alpha_i (s_i - 1) + beta_i sum_{j != i} (k_j - s_j)
+ noise`` with ``0 < alpha_i < beta_i``: defecting pays ``alpha_i`` per step,
each step of somebody else's cooperation pays ``beta_i``. The chain gaps are
``alpha_i`` and ``beta_i - alpha_i``, so noise below half of the smaller one
keeps every inequality strict.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import GenerationError
from .game import Game, pareto_optimal_transferable
from .pd import is_pd_flat

_NOISE_GRID = 1000


@dataclass(frozen=True)
class GeneratorConfig:
    """Parameters of :func:`gen_random_pd`.

    ``counts`` fixes the strategy counts; otherwise each is drawn from
    ``count_range``. ``tie_max`` makes the largest count shared by two
    players. ``cooperative`` draws every alpha below every beta and keeps
    only games where joint cooperation maximizes the payoff sum.
    """

    n: int = 3
    counts: tuple[int, ...] | None = None
    count_range: tuple[int, int] = (2, 4)
    seed: int = 0
    form: str = "linear-plus-noise"
    noise: Fraction = Fraction(1, 3)
    tie_max: bool = False
    cooperative: bool = False
    max_retries: int = 50

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("need at least two players")
        if self.form not in ("linear-separable", "linear-plus-noise"):
            raise ValueError(f"unknown payoff form {self.form!r}")
        if self.counts is not None and len(self.counts) != self.n:
            raise ValueError("counts must list one entry per player")
        object.__setattr__(self, "noise", Fraction(self.noise))


def linear_pd(
    counts: Sequence[int],
    alphas: Sequence,
    betas: Sequence,
    noise=None,
) -> Game:
    """The separable form plus an optional ``noise(i, s)`` term."""
    counts = tuple(counts)

    def u(i, s):
        value = Fraction(alphas[i - 1]) * (s[i - 1] - 1) + Fraction(betas[i - 1]) * sum(
            counts[j] - s[j] for j in range(len(counts)) if j != i - 1
        )
        return value + (noise(i, s) if noise else 0)

    return Game.from_function(counts, u)


def _draw_counts(cfg: GeneratorConfig, rng: random.Random) -> tuple[int, ...]:
    if cfg.counts is not None:
        return tuple(cfg.counts)
    lo, hi = cfg.count_range
    counts = [rng.randint(lo, hi) for _ in range(cfg.n)]
    if cfg.tie_max:
        top = max(counts)
        if counts.count(top) == 1:
            others = [j for j in range(cfg.n) if counts[j] != top]
            counts[rng.choice(others)] = top
    return tuple(counts)


def _attempt(cfg: GeneratorConfig, rng: random.Random) -> Game:
    counts = _draw_counts(cfg, rng)
    if cfg.cooperative:
        alphas = [rng.randint(1, 3) for _ in range(cfg.n)]
        floor = max(alphas) + 1
        betas = [rng.randint(floor, floor + 3) for _ in range(cfg.n)]
    else:
        alphas = [rng.randint(1, 4) for _ in range(cfg.n)]
        betas = [a + rng.randint(1, 4) for a in alphas]
    noise = None
    if cfg.form == "linear-plus-noise" and cfg.noise:
        table = {}

        def noise(i, s):
            key = (i, s)
            if key not in table:
                table[key] = cfg.noise * Fraction(
                    rng.randint(-_NOISE_GRID + 1, _NOISE_GRID - 1), _NOISE_GRID
                )
            return table[key]

    return linear_pd(counts, alphas, betas, noise)


def gen_random_pd(cfg: GeneratorConfig) -> Game:
    """A validated prisoner's dilemma, fully determined by ``cfg``."""
    for attempt in range(cfg.max_retries):
        rng = random.Random(f"{cfg.seed}:{attempt}")
        g = _attempt(cfg, rng)
        if not is_pd_flat(g).is_pd:
            continue
        if cfg.cooperative and not pareto_optimal_transferable(g, g.cooperative):
            continue
        return g
    raise GenerationError(
        f"no valid game after {cfg.max_retries} attempts; the noise scale {cfg.noise} is too large"
    )


def suite_config(seed: int, trial: int, **overrides) -> GeneratorConfig:
    """Instance family of the theorem suites: n in {2,3,4}, k_i in {2,3,4}."""
    rng = random.Random(f"{seed}:suite:{trial}")
    n = rng.randint(2, 4)
    params = dict(n=n, count_range=(2, 4), seed=rng.getrandbits(64))
    params.update(overrides)
    return GeneratorConfig(**params)


def gen_symmetric_schedule(seed: int, max_retries: int = 50):
    """A symmetric threshold public-goods schedule.

    n is 3 or 4, each k_i is 2 or 3, every player contributes in equal steps
    of ``d``, the multiplier lies strictly between n/2 and n, and the
    threshold lies above every single full contribution but is reached by the
    full contributions of any n - 1 players.
    """
    from .public_goods import ContributionSchedule

    for attempt in range(max_retries):
        rng = random.Random(f"{seed}:pgg:{attempt}")
        n = rng.randint(3, 4)
        counts = [rng.randint(2, 3) for _ in range(n)]
        d = rng.randint(1, 3)
        rows = [[d * (k - m) for m in range(1, k + 1)] for k in counts]
        tops = [row[0] for row in rows]
        low = max(tops)
        high = min(sum(tops) - t for t in tops)
        if high <= low:
            continue
        threshold = low + (high - low) * Fraction(rng.randint(1, 8), 8)
        multiplier = Fraction(n, 2) + Fraction(n, 2) * Fraction(rng.randint(1, 9), 10)
        return ContributionSchedule(rows, threshold, multiplier)
    raise GenerationError(f"no symmetric schedule after {max_retries} attempts")
