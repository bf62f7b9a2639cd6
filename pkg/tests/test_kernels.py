import random

import pytest

from losing_contracts import kernels
from losing_contracts.contracts import ReducedEvaluator, apply_losing, telescoped_amounts
from losing_contracts.game import Game, enumerate_restricted_games
from losing_contracts.generators import gen_random_pd, suite_config

BACKENDS = list(kernels.available_backends())


def test_compiled_backend_built():
    # the extension is optional at install time but expected in this build
    assert "compiled" in BACKENDS


def _cases():
    for t in range(25):
        g = gen_random_pd(suite_config(21, t))
        yield apply_losing(g, telescoped_amounts(g))
        yield g


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled kernels unavailable")
def test_backends_agree():
    rng = random.Random(0)
    for g in _cases():
        py, cy = kernels.prepare(g, "python"), kernels.prepare(g, "compiled")
        alias = list(ReducedEvaluator(g, telescoped_amounts(g)).alias)
        for rg in list(enumerate_restricted_games(g))[:15]:
            lo, hi = rg.bounds
            assert py.nash(g.strides, lo, hi) == cy.nash(g.strides, lo, hi)
            assert py.pd(g.strides, lo, hi) == cy.pd(g.strides, lo, hi)
            eligible = [i - 1 for i in rg.players]
            target = [v - 1 for v in rg.cooperative]
            for strict in (True, False):
                picky = rng.sample(eligible, 1)
                args = (g.strides, lo, hi, eligible, target, strict)
                assert py.strong(*args) == cy.strong(*args)
                assert py.strong(*args, alias, picky) == cy.strong(*args, alias, picky)


def test_huge_payoffs_fall_back_to_python():
    g = Game.from_function((2, 2), lambda i, s: 10**30 * (3 - s[i - 1]) + s[0])
    payload = kernels.prepare(g)
    assert payload.module is kernels._kernels_py
