"""Randomized properties over hypothesis-drawn games."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from losing_contracts.contracts import (
    ReducedEvaluator,
    apply_losing,
    in_feasible_region,
    optimizes,
    telescoped_amounts,
)
from losing_contracts.equilibrium import all_nash, strong_counterexample
from losing_contracts.game import Game, pareto_optimal_transferable, single_deviation_pareto
from losing_contracts.generators import GeneratorConfig, gen_random_pd
from losing_contracts.pd import is_pd_flat, is_pd_recursive


@st.composite
def games(draw, max_players=3):
    n = draw(st.integers(2, max_players))
    counts = tuple(draw(st.lists(st.integers(2, 3), min_size=n, max_size=n)))
    size = 1
    for k in counts:
        size *= k
    values = st.fractions(min_value=-20, max_value=20, max_denominator=4)
    rows = tuple(tuple(draw(st.lists(values, min_size=size, max_size=size))) for _ in range(n))
    return Game(counts, rows)


pds = st.builds(
    lambda n, seed: gen_random_pd(GeneratorConfig(n=n, seed=seed)),
    st.integers(2, 3),
    st.integers(0, 2**32),
)

SETTINGS = settings(max_examples=60, deadline=None)


@SETTINGS
@given(games())
def test_pd_checkers_agree(g):
    expected = oracles.is_pd(g.counts, oracles.table(g))
    assert is_pd_flat(g).is_pd is expected
    assert is_pd_recursive(g).is_pd is expected


@SETTINGS
@given(games())
def test_nash_and_strong_match_brute_force(g):
    pay = oracles.table(g)
    assert all_nash(g) == oracles.nash(g.counts, pay)
    s = g.cooperative
    found = strong_counterexample(g, s, strict=False)
    want = oracles.blocking(g.counts, pay, s, strict=False)
    assert (found is None) == (want is None)


@SETTINGS
@given(pds)
def test_telescoped_contract_on_pd(g):
    c = telescoped_amounts(g)
    assert in_feasible_region(g, c)
    assert optimizes(g, c)
    m = apply_losing(g, c)
    assert all_nash(m) == [g.cooperative]
    assert strong_counterexample(m, g.cooperative, strict=True) is None


@SETTINGS
@given(pds)
def test_remark3_equivalence(g):
    e = g.cooperative
    assert single_deviation_pareto(g, e) == pareto_optimal_transferable(g, e)


@SETTINGS
@given(pds)
def test_reduced_lower_bound(g):
    # the case split and the closed form coincide only for non-negative amounts
    c = telescoped_amounts(g, None)
    assert all(a >= 0 for row in c.amounts for a in row)
    ev = ReducedEvaluator(g, c)
    for s in g.profiles():
        for i in range(1, g.n + 1):
            assert ev.payoff_closed(i, s) >= min(ev.baseline[i - 1], g.payoff(i, s))
            assert ev.payoff_cases(i, s) == ev.payoff_closed(i, s)


@SETTINGS
@given(games(), st.fractions(min_value=0, max_value=10, max_denominator=3))
def test_losing_contracts_never_raise_sums(g, r):
    from losing_contracts.contracts import LosingContract

    m = apply_losing(g, LosingContract.uniform(g.counts, r))
    assert all(a <= b for a, b in zip(m.totals, g.totals))
    assert m.payoff_vector(g.cooperative) == g.payoff_vector(g.cooperative)
    assert isinstance(m.payoffs[0][0], Fraction)
