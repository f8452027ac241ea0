"""Exact cycle search by anchored backtracking.

Every cycle is searched for in its rotation that starts at its smallest
label (the anchor), so each cycle is visited once per anchor and the first
hit for a length is the lexicographically least such sequence.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Optional

from .digraph import Digraph, bits

ORACLE_MAX_ORDER = 8


@dataclass(frozen=True)
class SpectrumReport:
    n: int
    witnesses: dict[int, tuple[int, ...]] = field(default_factory=dict)

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(sorted(self.witnesses))

    @property
    def is_hamiltonian(self) -> bool:
        return self.n in self.witnesses

    @property
    def is_pancyclic(self) -> bool:
        return all(k in self.witnesses for k in range(3, self.n + 1))


def _reaches(d: Digraph, start: int, target: int, allowed: int) -> bool:
    seen = 1 << start
    frontier = seen
    goal = 1 << target
    allowed |= goal
    while frontier:
        nxt = 0
        for u in bits(frontier):
            nxt |= d.out_rows[u]
        if nxt & goal:
            return True
        frontier = nxt & allowed & ~seen
        seen |= frontier
    return False


def _anchored(d: Digraph, anchor: int, k: int) -> Optional[tuple[int, ...]]:
    higher = ((1 << d.n) - 1) & ~((1 << (anchor + 1)) - 1)
    if higher.bit_count() < k - 1:
        return None
    into_anchor = d.in_rows[anchor]
    path = [anchor]

    def extend(v: int, free: int) -> bool:
        remaining = k - len(path)
        if remaining == 0:
            return bool(into_anchor >> v & 1)
        for w in bits(d.out_rows[v] & free):
            rest = free & ~(1 << w)
            left = remaining - 1
            if left == 0:
                if not into_anchor >> w & 1:
                    continue
            elif rest.bit_count() < left or not into_anchor & rest:
                continue
            elif left >= 2 and not _reaches(d, w, anchor, rest):
                continue
            path.append(w)
            if extend(w, rest):
                return True
            path.pop()
        return False

    if extend(anchor, higher):
        return tuple(path)
    return None


def find_cycle_of_length(d: Digraph, k: int) -> Optional[tuple[int, ...]]:
    """Return a cycle on exactly ``k`` vertices, or ``None`` if there is none."""
    if not 2 <= k <= d.n:
        raise ValueError(f"cycle length {k} outside [2, {d.n}]")
    for anchor in range(d.n - k + 1):
        found = _anchored(d, anchor, k)
        if found is not None:
            return found
    return None


def hamiltonian_cycle(d: Digraph) -> Optional[tuple[int, ...]]:
    if d.n < 2:
        raise ValueError("hamiltonian_cycle needs n >= 2")
    return find_cycle_of_length(d, d.n)


def cycle_spectrum(d: Digraph) -> SpectrumReport:
    if d.n < 2:
        raise ValueError("cycle_spectrum needs n >= 2")
    witnesses = {}
    for k in range(2, d.n + 1):
        c = find_cycle_of_length(d, k)
        if c is not None:
            witnesses[k] = c
    return SpectrumReport(d.n, witnesses)


def longest_non_hamiltonian_cycle(d: Digraph) -> Optional[tuple[int, ...]]:
    if d.n < 3:
        raise ValueError("longest_non_hamiltonian_cycle needs n >= 3")
    for k in range(d.n - 1, 1, -1):
        c = find_cycle_of_length(d, k)
        if c is not None:
            return c
    return None


def oracle_all_cycles(d: Digraph) -> SpectrumReport:
    """Brute-force spectrum over every rotation-canonical vertex sequence.

    Independent of the backtracking search; exponential, so capped at
    ``ORACLE_MAX_ORDER`` vertices.
    """
    n = d.n
    if n > ORACLE_MAX_ORDER:
        raise ValueError(f"oracle limited to n <= {ORACLE_MAX_ORDER}, got {n}")
    adj = [[d.has_arc(u, v) for v in range(n)] for u in range(n)]
    best: dict[int, tuple[int, ...]] = {}
    for k in range(2, n + 1):
        for first in range(n):
            for rest in permutations(range(first + 1, n), k - 1):
                seq = (first,) + rest
                if all(adj[seq[i]][seq[(i + 1) % k]] for i in range(k)):
                    best[k] = seq
                    break
            if k in best:
                break
    return SpectrumReport(n, best)


def all_cycles(d: Digraph, max_order: int = ORACLE_MAX_ORDER):
    """Yield every cycle once, as its rotation starting at the smallest label."""
    n = d.n
    if n > max_order:
        raise ValueError(f"enumeration limited to n <= {max_order}")
    for k in range(2, n + 1):
        for subset in combinations(range(n), k):
            first, others = subset[0], subset[1:]
            for rest in permutations(others):
                seq = (first,) + rest
                if all(d.has_arc(seq[i], seq[(i + 1) % k]) for i in range(k)):
                    yield seq
