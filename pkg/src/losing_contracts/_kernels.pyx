# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled enumeration kernels.

Same functions and results as ``_kernels_py``; the payoff tensor must be a
C-contiguous ``int64`` array of shape ``(n, size)`` whose coalition sums fit
in 63 bits (checked by the caller).
"""

import itertools

from libc.stdlib cimport calloc, free

cdef enum:
    MAXP = 64


cdef inline bint _advance(int m, int* players, long long* cur, long long* lo,
                          long long* hi, long long* strides, long long* flat) noexcept nogil:
    """Mixed-radix increment over ``players`` (first listed most significant)."""
    cdef int t = m - 1
    cdef int p
    while t >= 0:
        p = players[t]
        if cur[p] < hi[p]:
            cur[p] += 1
            flat[0] += strides[p]
            return True
        flat[0] -= (cur[p] - lo[p]) * strides[p]
        cur[p] = lo[p]
        t -= 1
    return False


cdef int _load(object strides, object lo, object hi, long long* cst,
               long long* clo, long long* chi) except -1:
    cdef int n = len(strides)
    if n > MAXP:
        raise ValueError("too many players for the compiled kernel")
    for p in range(n):
        cst[p] = strides[p]
        clo[p] = lo[p]
        chi[p] = hi[p]
    return n


def nash_profiles(const long long[:, ::1] pay, strides, lo, hi):
    cdef long long cst[MAXP]
    cdef long long clo[MAXP]
    cdef long long chi[MAXP]
    cdef long long cur[MAXP]
    cdef int players[MAXP]
    cdef int n = _load(strides, lo, hi, cst, clo, chi)
    cdef Py_ssize_t size = pay.shape[1]
    cdef char* alive = <char*> calloc(size, 1)
    cdef long long flat, start, best, v, t
    cdef int p, q, m
    if alive == NULL:
        raise MemoryError()
    out = []
    try:
        for q in range(n):
            players[q] = q
            cur[q] = clo[q]
        flat = 0
        for q in range(n):
            flat += clo[q] * cst[q]
        start = flat
        while True:
            alive[flat] = 1
            if not _advance(n, players, cur, clo, chi, cst, &flat):
                break
        for p in range(n):
            if chi[p] == clo[p]:
                continue
            m = 0
            for q in range(n):
                if q != p:
                    players[m] = q
                    m += 1
                cur[q] = clo[q]
            flat = start - clo[p] * cst[p]
            while True:
                best = pay[p, flat + clo[p] * cst[p]]
                for t in range(clo[p] + 1, chi[p] + 1):
                    v = pay[p, flat + t * cst[p]]
                    if v > best:
                        best = v
                for t in range(clo[p], chi[p] + 1):
                    if pay[p, flat + t * cst[p]] < best:
                        alive[flat + t * cst[p]] = 0
                if not _advance(m, players, cur, clo, chi, cst, &flat):
                    break
        for q in range(n):
            players[q] = q
            cur[q] = clo[q]
        flat = start
        while True:
            if alive[flat]:
                out.append(flat)
            if not _advance(n, players, cur, clo, chi, cst, &flat):
                break
    finally:
        free(alive)
    return out


def strong_counterexample(const long long[:, ::1] pay, strides, lo, hi,
                          eligible, target, bint strict, alias=None, strict_members=None):
    cdef long long cst[MAXP]
    cdef long long clo[MAXP]
    cdef long long chi[MAXP]
    cdef long long cur[MAXP]
    cdef long long tgt[MAXP]
    cdef int members[MAXP]
    cdef int n = _load(strides, lo, hi, cst, clo, chi)
    cdef long long ft = 0, flat, before, after, home = 0
    cdef int q, m, size
    cdef bint same, tight, use_alias = alias is not None
    cdef const long long[::1] amap
    if use_alias:
        amap = alias
    for q in range(n):
        tgt[q] = target[q]
        ft += tgt[q] * cst[q]
    if use_alias:
        home = amap[ft]
    picky = None if strict_members is None else set(strict_members)
    for size in range(1, len(eligible) + 1):
        for combo in itertools.combinations(eligible, size):
            tight = strict if picky is None else not picky.isdisjoint(combo)
            m = size
            before = 0
            flat = ft
            for q in range(m):
                members[q] = combo[q]
                before += pay[members[q], ft]
                cur[members[q]] = clo[members[q]]
                flat += (clo[members[q]] - tgt[members[q]]) * cst[members[q]]
            while True:
                same = True
                for q in range(m):
                    if cur[members[q]] != tgt[members[q]]:
                        same = False
                        break
                if not same and not (use_alias and amap[flat] == home):
                    after = 0
                    for q in range(m):
                        after += pay[members[q], flat]
                    if after > before or (tight and after == before):
                        dev = tuple(cur[members[q]] for q in range(m))
                        return tuple(combo), dev, before, after
                if not _advance(m, members, cur, clo, chi, cst, &flat):
                    break
    return None


def pd_violation(const long long[:, ::1] pay, strides, lo, hi):
    cdef long long cst[MAXP]
    cdef long long clo[MAXP]
    cdef long long chi[MAXP]
    cdef long long cur[MAXP]
    cdef int others[MAXP]
    cdef int n = _load(strides, lo, hi, cst, clo, chi)
    cdef long long rest, a, b, c, d, k, kk
    cdef int i, j, q, m
    movable = [p for p in range(n) if chi[p] > clo[p]]
    for i, j in itertools.combinations(movable, 2):
        m = 0
        rest = 0
        for q in range(n):
            cur[q] = clo[q]
            if q != i and q != j:
                others[m] = q
                m += 1
                rest += clo[q] * cst[q]
        while True:
            for k in range(clo[i], chi[i]):
                for kk in range(clo[j], chi[j]):
                    a = rest + k * cst[i] + kk * cst[j]
                    b = a + cst[j]
                    c = a + cst[i]
                    d = c + cst[j]
                    if not pay[i, b] < pay[i, d]:
                        return i, j, a, 0
                    if not pay[i, d] < pay[i, a]:
                        return i, j, a, 1
                    if not pay[i, a] < pay[i, c]:
                        return i, j, a, 2
                    if not pay[j, c] < pay[j, d]:
                        return i, j, a, 3
                    if not pay[j, d] < pay[j, a]:
                        return i, j, a, 4
                    if not pay[j, a] < pay[j, b]:
                        return i, j, a, 5
            if not _advance(m, others, cur, clo, chi, cst, &rest):
                break
    return None
