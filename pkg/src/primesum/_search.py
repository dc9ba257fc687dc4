"""Backtracking kernels for induced tree search.

Two implementations of one algorithm: ``search_py`` over Python ints (any n)
and ``search_u64`` compiled with numba over uint64 masks (n <= FAST_MAX_N).
Both return the same lexicographically least assignment.
"""

from __future__ import annotations

import numba
import numpy as np

FAST_MAX_N = 62


def search_py(masks, full, parent_pos, deg_filter, twin_prev, children, pending):
    m = len(parent_pos)
    assigned = [0] * m

    def step(k, used, seen_union, pool):
        if k == 0:
            cand = full
        else:
            cand = pool[parent_pos[k]]
        cand &= deg_filter[k]
        if twin_prev[k] >= 0:
            cand &= ~((1 << (assigned[twin_prev[k]] + 1)) - 1)
        after = pending[k + 1]
        while cand:
            low = cand & -cand
            cand ^= low
            j = low.bit_length() - 1
            mj = masks[j]
            now = used | low
            nxt = [p & ~low & ~mj for p in pool]
            nxt.append(mj & ~now & ~seen_union)
            if any(nxt[w].bit_count() < children[w] - after[w] for w in range(k + 1)):
                continue
            assigned[k] = j
            if k + 1 == m or step(k + 1, now, seen_union | mj, nxt):
                return True
        return False

    return assigned if step(0, 0, 0, []) else None


@numba.njit(cache=True)
def _popcount(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return (x * np.uint64(0x0101010101010101)) >> np.uint64(56)


@numba.njit(cache=True)
def _lowest(x):
    k = 0
    while (x >> np.uint64(k)) & np.uint64(1) == 0:
        k += 1
    return k


@numba.njit(cache=True)
def search_u64(masks, full, parent_pos, deg_filter, twin_prev, children, pending):
    m = parent_pos.shape[0]
    one = np.uint64(1)
    assigned = np.zeros(m, dtype=np.int64)
    cand = np.zeros(m, dtype=np.uint64)
    used = np.zeros(m + 1, dtype=np.uint64)
    seen = np.zeros(m + 1, dtype=np.uint64)
    pool = np.zeros((m + 1, m), dtype=np.uint64)

    cand[0] = full & deg_filter[0]
    k = 0
    while True:
        if cand[k] == 0:
            k -= 1
            if k < 0:
                return False, assigned
            continue
        j = _lowest(cand[k])
        low = one << np.uint64(j)
        cand[k] &= ~low
        mj = masks[j]
        now = used[k] | low
        ok = True
        for w in range(k):
            pool[k + 1, w] = pool[k, w] & ~low & ~mj
        pool[k + 1, k] = mj & ~now & ~seen[k]
        for w in range(k + 1):
            if np.int64(_popcount(pool[k + 1, w])) < children[w] - pending[k + 1, w]:
                ok = False
                break
        if not ok:
            continue
        assigned[k] = j
        if k + 1 == m:
            return True, assigned
        used[k + 1] = now
        seen[k + 1] = seen[k] | mj
        k += 1
        c = pool[k, parent_pos[k]] & deg_filter[k]
        if twin_prev[k] >= 0:
            c &= ~((one << np.uint64(assigned[twin_prev[k]] + 1)) - one)
        cand[k] = c
