"""Pure-Python enumeration kernels.

Every function works on an integer payoff tensor ``pay`` (one flat row per
player), the mixed-radix ``strides`` and inclusive 0-based strategy bounds
``lo``/``hi``. The compiled module ``_kernels`` exposes the same functions with
identical results; this one is the fallback and the reference.
"""

from __future__ import annotations

import itertools


def _box(strides, lo, hi, players):
    """Flat offsets of every joint strategy of ``players`` (mixed-radix)."""
    offsets = [0]
    for p in players:
        step = strides[p]
        offsets = [o + s * step for o in offsets for s in range(lo[p], hi[p] + 1)]
    return offsets


def nash_profiles(pay, strides, lo, hi):
    """Flat indices of pure Nash profiles inside the box, in canonical order."""
    n = len(strides)
    cells = _box(strides, lo, hi, range(n))
    alive = set(cells)
    for p in range(n):
        if hi[p] == lo[p]:
            continue
        row = pay[p]
        step = strides[p]
        for off in _box(strides, lo, hi, [q for q in range(n) if q != p]):
            column = [off + t * step for t in range(lo[p], hi[p] + 1)]
            best = max(row[c] for c in column)
            alive.difference_update(c for c in column if row[c] < best)
    return [c for c in cells if c in alive]


def strong_counterexample(pay, strides, lo, hi, eligible, target, strict,
                          alias=None, strict_members=None):
    """First coalition deviation that breaks strong Nash at ``target``.

    ``target`` is a 0-based profile. Coalitions are subsets of ``eligible`` by
    size, then lexicographically; deviations run mixed-radix over the
    coalition's strategies. A tie blocks when ``strict`` is set or, if
    ``strict_members`` is given, when the coalition contains one of them.
    With ``alias`` (flat index -> representative), deviations landing on the
    target's representative are not deviations at all. Returns
    ``(members, deviation, before, after)`` with 0-based strategies, or None.
    """
    flat_target = sum(t * st for t, st in zip(target, strides))
    home = alias[flat_target] if alias is not None else None
    picky = set(strict_members) if strict_members is not None else None
    for size in range(1, len(eligible) + 1):
        for members in itertools.combinations(eligible, size):
            tight = strict if picky is None else not picky.isdisjoint(members)
            before = sum(pay[m][flat_target] for m in members)
            anchor = flat_target - sum(target[m] * strides[m] for m in members)
            own = tuple(target[m] for m in members)
            for dev in itertools.product(*(range(lo[m], hi[m] + 1) for m in members)):
                if dev == own:
                    continue
                flat = anchor + sum(d * strides[m] for d, m in zip(dev, members))
                if home is not None and alias[flat] == home:
                    continue
                after = sum(pay[m][flat] for m in members)
                if after > before or (tight and after == before):
                    return members, dev, before, after
    return None


def pd_violation(pay, strides, lo, hi):
    """First broken classical-PD chain over contiguous 2x2 blocks, or None.

    Scan order: player pairs ``i < j``, then the others' profile mixed-radix,
    then contiguous index pairs of ``i`` and of ``j``. Labels 0-2 are the
    links of player ``i``'s chain, 3-5 those of player ``j``. Returns
    ``(i, j, flat, label)`` where ``flat`` is the block's cooperative corner.
    """
    n = len(strides)
    movable = [p for p in range(n) if hi[p] > lo[p]]
    for i, j in itertools.combinations(movable, 2):
        ui, uj = pay[i], pay[j]
        si, sj = strides[i], strides[j]
        others = [q for q in range(n) if q != i and q != j]
        for rest in _box(strides, lo, hi, others):
            for k in range(lo[i], hi[i]):
                for kk in range(lo[j], hi[j]):
                    a = rest + k * si + kk * sj
                    b = a + sj
                    c = a + si
                    d = c + sj
                    if not ui[b] < ui[d]:
                        return i, j, a, 0
                    if not ui[d] < ui[a]:
                        return i, j, a, 1
                    if not ui[a] < ui[c]:
                        return i, j, a, 2
                    if not uj[c] < uj[d]:
                        return i, j, a, 3
                    if not uj[d] < uj[a]:
                        return i, j, a, 4
                    if not uj[a] < uj[b]:
                        return i, j, a, 5
    return None
