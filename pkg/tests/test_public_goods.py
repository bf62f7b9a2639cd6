import itertools
from fractions import Fraction

import pytest

import oracles

from losing_contracts.errors import ScheduleError
from losing_contracts.generators import gen_symmetric_schedule
from losing_contracts.public_goods import (
    ContributionSchedule,
    build_pgg,
    theorem3_amounts,
    tilde_matches_theorem1,
    validate_order_c,
    verify_theorem3,
)


def small(a=2, threshold=3):
    return ContributionSchedule([[2, 1, 0]] * 3, threshold, a)


def test_payoffs_both_branches():
    g = build_pgg(small()).game
    assert g.payoff_vector((1, 1, 1)) == (4, 4, 4)
    assert g.payoff_vector((3, 3, 3)) == (2, 2, 2)


def test_refund_branch_everywhere():
    p = build_pgg(small())
    for s in p.game.profiles():
        if p.schedule.total(s) < 3:
            assert p.game.payoff_vector(s) == (2, 2, 2)


def test_above_threshold_others_help():
    p = build_pgg(small())
    g = p.game
    for s in g.profiles():
        for j in range(3):
            if s[j] == 1:
                continue
            t = s[:j] + (s[j] - 1,) + s[j + 1 :]
            if p.schedule.total(s) >= 3:
                assert all(g.payoff(i, t) > g.payoff(i, s) for i in (1, 2, 3) if i != j + 1)


@pytest.mark.parametrize(
    "rows, threshold, a",
    [([[2, 1, 1]] * 3, 3, 2), ([[2, 2, 0]] * 3, 3, 2), ([[2, 0]], 1, 2), ([[2, 0]] * 2, 0, 2)],
)
def test_schedule_errors(rows, threshold, a):
    with pytest.raises(ScheduleError):
        ContributionSchedule(rows, threshold, a)


def test_order_c_examples():
    assert validate_order_c(build_pgg(small(2))).passed
    report = validate_order_c(build_pgg(small(1)))
    assert not report.passed and report.violations
    meaningless = validate_order_c(build_pgg(small(2, threshold=7)))
    assert meaningless.passed and "meaningless" in meaningless.warning


def _window_games(p):
    """Every game with some players fixed and the rest on contiguous windows."""
    counts = p.game.counts
    n = len(counts)
    windows = [[(lo, hi) for lo in range(1, k + 1) for hi in range(lo, k + 1)] for k in counts]
    for size in range(0, n - 1):
        for fixed in itertools.combinations(range(n), size):
            choices = [
                [(v, v) for v in range(1, counts[i] + 1)] if i in fixed else windows[i]
                for i in range(n)
            ]
            yield from itertools.product(*choices)


def test_order_c_matches_window_enumeration():
    for a in (1, Fraction(3, 2), 2, Fraction(5, 2)):
        p = build_pgg(small(a))
        pay = oracles.table(p.game)
        direct = True
        for box in _window_games(p):
            if p.schedule.total([hi for _, hi in box]) < p.schedule.threshold:
                continue
            sizes = [hi - lo + 1 for lo, hi in box]
            free = [i for i, k in enumerate(sizes) if k > 1]
            if len(free) < 2:
                continue
            local = {
                t: pay[tuple(lo + x - 1 for (lo, _), x in zip(box, t))]
                for t in itertools.product(*(range(1, k + 1) for k in sizes))
            }
            if not oracles.is_pd(sizes, local):
                direct = False
        assert validate_order_c(p).passed == direct
        assert direct == (a > Fraction(3, 2))


def test_theorem3_small_instance_passes():
    p = build_pgg(small())
    report = verify_theorem3(p)
    assert report.passed
    assert report.extra["signing"]["sign_dominant"]


def test_tilde_equals_telescoped_on_symmetric():
    for seed in range(10):
        p = build_pgg(gen_symmetric_schedule(seed))
        assert tilde_matches_theorem1(p) == []


def test_symmetric_generator_ranges():
    for seed in range(30):
        s = gen_symmetric_schedule(seed)
        assert s.n in (3, 4)
        assert set(s.counts) <= {2, 3}
        assert Fraction(s.n, 2) < s.multiplier < s.n
        tops = [row[0] for row in s.contributions]
        assert max(tops) < s.threshold <= min(sum(tops) - t for t in tops)
        steps = {a - b for row in s.contributions for a, b in zip(row, row[1:])}
        assert len(steps) == 1


def test_amounts_shape():
    c = theorem3_amounts(build_pgg(small()))
    assert c.counts == (3, 3, 3)
