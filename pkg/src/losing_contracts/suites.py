"""Seeded property suites over generated games and the worked examples."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

from .contracts import verify_theorem1, verify_theorem2
from .equilibrium import strong_counterexample, strong_counterexample_pruned
from .game import Game, pareto_optimal_transferable, single_deviation_pareto
from .generators import gen_random_pd, gen_symmetric_schedule, suite_config
from .pd import check_lemma3, check_lemma4, check_lemma5, check_lemma6, check_lemma7
from .public_goods import build_pgg, tilde_matches_theorem1, verify_theorem3
from .reproduce import worked_examples
from . import fixtures

SUITES = ("lemmas", "theorem1", "theorem2", "theorem3", "section4")
DEFAULT_TRIALS = {"lemmas": 100, "theorem1": 50, "theorem2": 50, "theorem3": 20, "section4": 1}
LEMMA6_TRIALS = 20


@dataclass
class Trial:
    index: int
    instance: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"trial": self.index, "instance": self.instance, "passed": self.passed, **self.detail}


@dataclass
class SuiteReport:
    suite: str
    seed: int
    trials: list[Trial] = field(default_factory=list)
    seconds: float = 0.0
    children: list[SuiteReport] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(t.passed for t in self.trials) and all(c.passed for c in self.children)

    @property
    def pass_count(self) -> int:
        return sum(t.passed for t in self.trials)

    @property
    def first_failure(self) -> Trial | None:
        return next((t for t in self.trials if not t.passed), None)

    def to_json(self) -> dict:
        out = {
            "suite": self.suite,
            "seed": self.seed,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
        }
        if self.children:
            out["suites"] = [c.to_json() for c in self.children]
        else:
            out["summary"] = f"{self.pass_count}/{len(self.trials)}"
            failure = self.first_failure
            out["first_failure"] = failure and failure.to_json()
            out["trials"] = [t.to_json() for t in self.trials]
        return out


def lemma_game(seed: int, trial: int) -> Game:
    """Validated PD whose joint cooperation maximizes the payoff sum and whose
    largest strategy count is shared, as the lemmas presuppose."""
    return gen_random_pd(suite_config(seed, trial, cooperative=True, tie_max=True))


def theorem_game(seed: int, trial: int) -> Game:
    return gen_random_pd(suite_config(seed, trial))


def schedule_seed(seed: int, trial: int) -> int:
    return random.Random(f"{seed}:pgg-suite:{trial}").getrandbits(64)


def _lemmas_trial(seed: int, t: int) -> Trial:
    g = lemma_game(seed, t)
    checks = {
        "lemma3": check_lemma3(g),
        "lemma4": check_lemma4(g),
        "lemma5": check_lemma5(g),
        "lemma7": check_lemma7(g),
        "remark3": single_deviation_pareto(g, g.cooperative)
        == pareto_optimal_transferable(g, g.cooperative),
    }
    if t < LEMMA6_TRIALS:
        bad = check_lemma6(g)
        checks["lemma6"] = bad is None
        if bad is not None:
            return Trial(t, g.digest(), False, {"checks": checks, "lemma6_witness": bad.describe()})
    return Trial(t, g.digest(), all(checks.values()), {"checks": checks})


def _theorem_trial(verify: Callable) -> Callable[[int, int], Trial]:
    def run(seed: int, t: int) -> Trial:
        g = theorem_game(seed, t)
        report = verify(g)
        detail = {
            "counts": list(g.counts),
            "restricted_games": report.restricted_games,
            "failure_count": len(report.failures),
            "first_failure": report.first_failure and report.first_failure.to_json(),
        }
        if "refined" in report.extra:
            detail["covered"] = report.covered
            detail["degenerate"] = report.degenerate
            detail["refined_passed"] = report.extra["refined"]["passed"]
        return Trial(t, g.digest(), report.passed, detail)

    return run


def _theorem3_trial(seed: int, t: int) -> Trial:
    p = build_pgg(gen_symmetric_schedule(schedule_seed(seed, t)))
    report = verify_theorem3(p)
    mismatched = tilde_matches_theorem1(p)
    detail = {
        "schedule": p.schedule.to_json(),
        "order_c": report.extra["order_c"]["passed"],
        "signing": report.extra.get("signing"),
        "tilde_equal": not mismatched,
        "failure_count": len(report.failures),
        "first_failure": report.first_failure and report.first_failure.to_json(),
        "refined_passed": report.extra["refined"]["passed"],
    }
    return Trial(t, p.game.digest(), report.passed and not mismatched, detail)


def _section4(seed: int, trials: int) -> list[Trial]:
    out = [Trial(i, c.name, c.passed, c.to_json()) for i, c in enumerate(worked_examples())]
    for name in fixtures.names():
        g = fixtures.load(name)
        same = all(
            strong_counterexample(g, s, strict) == strong_counterexample_pruned(g, s, strict)
            for s in g.profiles()
            for strict in (True, False)
        )
        out.append(Trial(len(out), g.digest(), same, {"pruned_scan_agrees": name}))
    return out


RUNNERS: dict[str, Callable[[int, int], Trial]] = {
    "lemmas": _lemmas_trial,
    "theorem1": _theorem_trial(verify_theorem1),
    "theorem2": _theorem_trial(verify_theorem2),
    "theorem3": _theorem3_trial,
}


def run_suite(name: str, trials: int | None = None, seed: int = 7) -> SuiteReport:
    """Run one suite (or ``all``); deterministic in ``(name, trials, seed)``."""
    if name == "all":
        start = time.perf_counter()
        children = [run_suite(s, trials, seed) for s in SUITES]
        return SuiteReport("all", seed, seconds=time.perf_counter() - start, children=children)
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; expected one of {SUITES + ('all',)}")
    start = time.perf_counter()
    if name == "section4":
        results = _section4(seed, trials or 1)
    else:
        count = DEFAULT_TRIALS[name] if trials is None else trials
        results = [RUNNERS[name](seed, t) for t in range(count)]
    return SuiteReport(name, seed, results, time.perf_counter() - start)
