"""Brute-force reference implementations.

Everything here works on plain dictionaries ``profile -> payoff tuple`` and
``itertools.product``; nothing reuses the package's indexing, kernels or
enumeration code.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def table(g) -> dict:
    return {s: tuple(g.payoffs[i][idx] for i in range(g.n)) for idx, s in enumerate(all_profiles(g.counts))}


def all_profiles(counts, avail=None):
    ranges = avail or [range(1, k + 1) for k in counts]
    return list(itertools.product(*ranges))


def nash(counts, pay, avail=None) -> list:
    avail = avail or [range(1, k + 1) for k in counts]
    out = []
    for s in itertools.product(*avail):
        stable = True
        for i in range(len(counts)):
            for k in avail[i]:
                t = s[:i] + (k,) + s[i + 1 :]
                if pay[t][i] > pay[s][i]:
                    stable = False
        if stable:
            out.append(s)
    return out


def blocking(counts, pay, s, strict, players=None, avail=None):
    """First blocking (coalition, deviation, before, after) in canonical order."""
    n = len(counts)
    players = players or list(range(1, n + 1))
    avail = avail or [range(1, k + 1) for k in counts]
    for size in range(1, len(players) + 1):
        for coalition in itertools.combinations(players, size):
            before = sum(pay[s][i - 1] for i in coalition)
            for dev in itertools.product(*(avail[i - 1] for i in coalition)):
                t = list(s)
                for i, k in zip(coalition, dev):
                    t[i - 1] = k
                t = tuple(t)
                if t == tuple(s):
                    continue
                after = sum(pay[t][i - 1] for i in coalition)
                if after > before or (strict and after == before):
                    return coalition, dev, before, after
    return None


def is_pd(counts, pay) -> bool:
    """Every contiguous 2x2 block of every pair satisfies both strict chains."""
    n = len(counts)
    for i, j in itertools.combinations(range(n), 2):
        for s in itertools.product(*(range(1, k + 1) for k in counts)):
            a, b = s[i], s[j]
            if a == counts[i] or b == counts[j]:
                continue

            def at(x, y):
                t = list(s)
                t[i], t[j] = x, y
                return pay[tuple(t)]

            cc, cd, dc, dd = at(a, b), at(a, b + 1), at(a + 1, b), at(a + 1, b + 1)
            if not (cd[i] < dd[i] < cc[i] < dc[i]):
                return False
            if not (dc[j] < dd[j] < cc[j] < cd[j]):
                return False
    return True


def compensate(counts, s):
    depth = [k - v for k, v in zip(counts, s)]
    ranked = sorted(depth, reverse=True)
    if len(ranked) < 2 or ranked[0] == ranked[1]:
        return tuple(s)
    i = depth.index(ranked[0])
    t = list(s)
    t[i] = counts[i] - ranked[1]
    return tuple(t)


def reduced(counts, pay, amounts, i, s):
    """Three-case reduced payoff after compensation (player ``i`` 1-based)."""
    t = compensate(counts, s)
    u = pay[t][i - 1]
    k = t[i - 1]
    r = Fraction(0) if k == 1 else Fraction(amounts[i - 1][k - 2])
    floor = pay[tuple(counts)][i - 1]
    if u - r > floor:
        return u - r
    if u > floor:
        return floor
    return u


def telescoped(counts, pay, eps):
    """``r_{i,k} = sum_{m=2..k} max_{s_-i} [u_i(m) - u_i(m-1)] + eps_{i,k}``."""
    out = []
    for i, k_i in enumerate(counts):
        row, total = [], Fraction(0)
        for m in range(2, k_i + 1):
            gains = []
            for s in pay:
                if s[i] == m:
                    prev = s[:i] + (m - 1,) + s[i + 1 :]
                    gains.append(pay[s][i] - pay[prev][i])
            total += max(gains)
            row.append(total + eps[i][m - 2])
        out.append(row)
    return out


def max_sum_profiles(pay):
    best = max(sum(v) for v in pay.values())
    return [s for s, v in pay.items() if sum(v) == best]
