"""Compiled bulk scan over arc masks.

The kernel decodes each mask into bit rows and evaluates, in one pass,
strong connectivity, the directed-cycle test, condition C and the full
cycle spectrum. The spectrum comes from a subset DP (``reach[S]`` = ends of
paths that start at ``min(S)`` and cover exactly ``S``), which is a different
algorithm from the backtracking search in :mod:`cyclelab.cycles`.
"""
from __future__ import annotations

import numpy as np
from numba import njit

MODE_MAIN = 0
MODE_THEOREM_C = 1
MODE_MINE = 2
# flags every survivor of the filter chain (main-theorem filters)
MODE_SURVIVORS = 3

# counts layout
TOTAL, STRONG, DIRECTED_CYCLES, SURVIVORS, HAMILTONIAN, WITH_N1, WITH_N2 = range(7)
N_COUNTS = 7

GAMMA = np.uint64(0x9E3779B97F4A7C15)
MIX1 = np.uint64(0xBF58476D1CE4E5B9)
MIX2 = np.uint64(0x94D049BB133111EB)


@njit(cache=True)
def _mix(z):
    z = (z ^ (z >> np.uint64(30))) * MIX1
    z = (z ^ (z >> np.uint64(27))) * MIX2
    return z ^ (z >> np.uint64(31))


@njit(cache=True)
def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit(cache=True)
def _decode_exhaustive(n, mask, out, inn):
    for u in range(n):
        out[u] = 0
        inn[u] = 0
    pos = 0
    for u in range(n):
        for v in range(n):
            if u != v:
                if (mask >> pos) & 1:
                    out[u] |= 1 << v
                    inn[v] |= 1 << u
                pos += 1


@njit(cache=True)
def _decode_sample(n, seed, k, words, out, inn):
    width = n * (n - 1)
    nwords = (width + 63) // 64
    base = np.uint64(k) * np.uint64(nwords)
    for j in range(nwords):
        words[j] = _mix(seed + (base + np.uint64(j + 1)) * GAMMA)
    for u in range(n):
        out[u] = 0
        inn[u] = 0
    pos = 0
    for u in range(n):
        for v in range(n):
            if u != v:
                if (words[pos // 64] >> np.uint64(pos % 64)) & np.uint64(1):
                    out[u] |= 1 << v
                    inn[v] |= 1 << u
                pos += 1


@njit(cache=True)
def _closure(rows, n, full):
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            u = _popcount(low - 1)
            nxt |= rows[u]
            f ^= low
        frontier = nxt & full & ~seen
        seen |= frontier
    return seen


@njit(cache=True)
def _is_strong(out, inn, n):
    full = (1 << n) - 1
    return _closure(out, n, full) == full and _closure(inn, n, full) == full


@njit(cache=True)
def _is_directed_cycle_given_strong(out, inn, n):
    for v in range(n):
        if _popcount(out[v]) != 1 or _popcount(inn[v]) != 1:
            return False
    return True


@njit(cache=True)
def _condition_c(out, inn, n):
    deg_out = np.empty(n, np.int64)
    deg_in = np.empty(n, np.int64)
    for v in range(n):
        deg_out[v] = _popcount(out[v])
        deg_in[v] = _popcount(inn[v])
    for x in range(n):
        adj = out[x] | inn[x]
        for y in range(x + 1, n):
            if (adj >> y) & 1:
                continue
            if (out[x] & out[y]) == 0 and (inn[x] & inn[y]) == 0:
                continue
            if deg_out[x] + deg_in[x] + deg_out[y] + deg_in[y] < 2 * n - 1:
                return False
            if min(deg_out[x] + deg_in[y], deg_in[x] + deg_out[y]) < n - 1:
                return False
    return True


@njit(cache=True)
def _spectrum(out, n, reach, popc):
    """Bit ``k`` of the result is set iff a cycle on ``k`` vertices exists."""
    size = 1 << n
    for s in range(size):
        reach[s] = 0
    for v in range(n):
        reach[1 << v] = 1 << v
    spec = 0
    for s in range(1, size):
        ends = reach[s]
        if ends == 0:
            continue
        anchor_bit = s & -s
        higher = ~((anchor_bit << 1) - 1) & (size - 1)
        free = higher & ~s
        k = popc[s]
        e = ends
        while e:
            low = e & -e
            v = popc[low - 1]
            e ^= low
            row = out[v]
            if k >= 2 and (row & anchor_bit):
                spec |= 1 << k
            nxt = row & free
            while nxt:
                wb = nxt & -nxt
                nxt ^= wb
                reach[s | wb] |= wb
    return spec


@njit(cache=True)
def scan_kernel(n, lo, hi, sampled, seed, mode, counts):
    """Scan indices ``lo <= i < hi``; accumulate into ``counts``; return flagged indices."""
    out = np.zeros(n, np.int64)
    inn = np.zeros(n, np.int64)
    words = np.zeros((n * (n - 1) + 63) // 64, np.uint64)
    reach = np.zeros(1 << n, np.int64)
    popc = np.zeros(1 << n, np.int64)
    for s in range(1, 1 << n):
        popc[s] = popc[s >> 1] + (s & 1)
    flagged = np.empty(16, np.int64)
    nflag = 0
    for i in range(lo, hi):
        if sampled:
            _decode_sample(n, seed, i, words, out, inn)
        else:
            _decode_exhaustive(n, i, out, inn)
        counts[TOTAL] += 1
        if not _is_strong(out, inn, n):
            continue
        counts[STRONG] += 1
        if mode != MODE_THEOREM_C and _is_directed_cycle_given_strong(out, inn, n):
            counts[DIRECTED_CYCLES] += 1
            continue
        if not _condition_c(out, inn, n):
            continue
        counts[SURVIVORS] += 1
        spec = _spectrum(out, n, reach, popc)
        ham = (spec >> n) & 1
        n1 = (spec >> (n - 1)) & 1
        n2 = (spec >> (n - 2)) & 1 if n >= 4 else 0
        counts[HAMILTONIAN] += ham
        counts[WITH_N1] += n1
        counts[WITH_N2] += n2
        if mode == MODE_MAIN:
            flag = n1 == 0 and n2 == 0
        elif mode == MODE_THEOREM_C:
            flag = ham == 0
        elif mode == MODE_MINE:
            flag = n1 == 0
        else:
            flag = True
        if flag:
            if nflag == flagged.shape[0]:
                bigger = np.empty(2 * nflag, np.int64)
                bigger[:nflag] = flagged
                flagged = bigger
            flagged[nflag] = i
            nflag += 1
    return flagged[:nflag].copy()


@njit(cache=True)
def sample_words(n, seed, k):
    words = np.zeros((n * (n - 1) + 63) // 64, np.uint64)
    base = np.uint64(k) * np.uint64(words.shape[0])
    for j in range(words.shape[0]):
        words[j] = _mix(seed + (base + np.uint64(j + 1)) * GAMMA)
    return words
