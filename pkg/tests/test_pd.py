import pytest

import oracles
from losing_contracts import fixtures
from losing_contracts.errors import PreconditionError, ShapeError
from losing_contracts.game import Game
from losing_contracts.generators import GeneratorConfig, gen_random_pd, linear_pd
from losing_contracts.pd import (
    CHAIN_LABELS,
    block,
    check_lemma3,
    check_lemma4,
    check_lemma5,
    check_lemma6,
    check_lemma7,
    check_remark2,
    classical_pd_2x2,
    is_pd_flat,
    is_pd_recursive,
)


def test_classical_block_table_1():
    assert classical_pd_2x2(block(fixtures.load("table-1"), 1, 2, (1, 1)))


def test_tables_5_6_slice_fails():
    g = fixtures.load("tables-5-6")
    u = block(g, 1, 2, (1, 1, 1))
    assert u[0][0][1] == 10 and u[0][1][1] == 11 and u[0][0][0] == 8
    assert not classical_pd_2x2(u)


def test_flat_block_fails():
    assert not classical_pd_2x2([[[1, 1], [1, 1]], [[1, 1], [1, 1]]])


@pytest.mark.parametrize(
    "name, expected",
    [("table-1", True), ("tables-12-13", True), ("tables-5-6", False), ("tables-18-19", True)],
)
def test_pd_verdicts(name, expected):
    g = fixtures.load(name)
    assert is_pd_flat(g).is_pd is expected
    assert is_pd_recursive(g).is_pd is expected


def test_witness_replays():
    g = fixtures.load("tables-5-6")
    verdict = is_pd_flat(g)
    v = verdict.first_violation
    assert v is not None
    i, j = v.players
    from losing_contracts.pd import chain_failure

    assert chain_failure(block(g, i, j, v.profile)) == v.label
    assert v.description == CHAIN_LABELS[v.label]


def test_flat_matches_brute_force_on_perturbations():
    for seed in range(30):
        g = gen_random_pd(GeneratorConfig(n=3, seed=seed))
        assert oracles.is_pd(g.counts, oracles.table(g))
        flat = (seed * 7) % g.size
        rows = [list(r) for r in g.payoffs]
        rows[seed % g.n][flat] += 3 if seed % 2 else -3
        h = Game(g.counts, tuple(tuple(r) for r in rows))
        assert is_pd_flat(h).is_pd == oracles.is_pd(h.counts, oracles.table(h))


def test_remark2_examples():
    assert check_remark2(fixtures.load("table-1"))
    assert check_remark2(fixtures.load("tables-9"))
    t1 = fixtures.load("table-1")
    bumped = Game.from_function(t1.counts, lambda i, s: 100 if (i, s) == (1, (2, 1)) else t1.payoff(i, s))
    assert not check_remark2(bumped)
    with pytest.raises(ShapeError):
        check_remark2(fixtures.load("tables-12-13"))


def test_lemma_checkers_on_fixtures():
    g = fixtures.load("tables-12-13")
    assert check_lemma3(g)
    assert check_lemma4(g)
    assert check_lemma5(g)
    assert check_lemma7(g)
    assert check_lemma6(g) is None
    assert check_lemma4(fixtures.load("table-1"))
    assert check_lemma5(fixtures.load("tables-18-19"))
    assert check_lemma7(fixtures.load("table-1"))


def test_lemma_checkers_refuse_non_pd():
    with pytest.raises(PreconditionError) as info:
        check_lemma3(fixtures.load("tables-5-6"))
    assert info.value.reason == "not-pd"


def test_lemma4_precondition_on_unique_max():
    g = linear_pd((3, 2), (1, 1), (3, 3))
    with pytest.raises(PreconditionError) as info:
        check_lemma4(g)
    assert info.value.reason == "unique-max-strategies"


def test_alpha_not_below_beta_breaks_chain():
    g = linear_pd((2, 2, 2), (3, 3, 3), (2, 2, 2))
    assert not is_pd_flat(g).is_pd
