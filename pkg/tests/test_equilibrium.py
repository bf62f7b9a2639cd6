from fractions import Fraction

import oracles
from losing_contracts import fixtures
from losing_contracts.contracts import theorem1_amounts, apply_losing
from losing_contracts.equilibrium import (
    all_nash,
    dominant_solve,
    is_nash,
    is_strong_nash,
    strong_counterexample,
    strong_counterexample_pruned,
)
from losing_contracts.exchange import PunishContract, apply_punish
from losing_contracts.game import restrict
from losing_contracts.generators import GeneratorConfig, gen_random_pd


def test_is_nash_examples():
    assert is_nash(fixtures.load("table-2"), (1, 1))
    assert not is_nash(fixtures.load("table-1"), (1, 1))
    assert is_nash(fixtures.load("tables-16-17"), (2, 2, 2))


def test_all_nash_examples():
    assert all_nash(fixtures.load("tables-7-8")) == [(1, 1, 1)]
    assert {(1, 1, 1), (2, 2, 2)} <= set(all_nash(fixtures.load("tables-16-17")))
    assert all_nash(fixtures.load("table-1")) == [(2, 2)]


def test_tables_7_8_pair_counterexample():
    report = is_strong_nash(fixtures.load("tables-7-8"), (1, 1, 1), strict=True)
    assert report.is_nash and report.is_unique_nash and not report.is_strong
    c = report.counterexample
    assert c.coalition == (1, 2) and c.deviation == (2, 2)
    assert (c.before, c.after) == (16, 18)


def test_table_2_is_strict_strong():
    report = is_strong_nash(fixtures.load("table-2"), (1, 1))
    assert report.is_strong and report.counterexample is None


def test_directed_punish_coalition():
    g = apply_punish(fixtures.load("tables-18-19"), PunishContract((10, 2, 2), "directed"))
    c = is_strong_nash(g, (1, 1, 1)).counterexample
    assert c.coalition == (1, 2) and (c.before, c.after) == (14, 21)


def test_dominant_solve_examples():
    assert dominant_solve(fixtures.load("table-2")) == (1, 1)
    assert dominant_solve(fixtures.load("tables-5-6")) is None
    assert dominant_solve(fixtures.load("table-1")) == (2, 2)


def test_restricted_nash_matches_oracle():
    for seed in range(10):
        g = gen_random_pd(GeneratorConfig(n=3, counts=(3, 3, 3), seed=seed))
        rg = restrict(g, {2: 2}, {1: 2})
        avail = [range(2, 4), range(2, 3), range(1, 4)]
        assert all_nash(rg) == oracles.nash(g.counts, oracles.table(g), avail)


def test_strong_matches_oracle_and_pruned():
    for seed in range(15):
        g = gen_random_pd(GeneratorConfig(n=3, seed=seed))
        m = apply_losing(g, theorem1_amounts(g))
        for game in (g, m):
            pay = oracles.table(game)
            for s in game.profiles():
                for strict in (True, False):
                    got = strong_counterexample(game, s, strict)
                    want = oracles.blocking(game.counts, pay, s, strict)
                    assert (got is None) == (want is None)
                    if got:
                        assert (got.coalition, got.deviation, got.before, got.after) == want
                    assert got == strong_counterexample_pruned(game, s, strict)


def test_counterexample_apply():
    c = strong_counterexample(fixtures.load("tables-7-8"), (1, 1, 1))
    assert c.apply((1, 1, 1)) == (2, 2, 1)
    assert c.to_json()["after"] == 18
    assert isinstance(c.before, Fraction)
