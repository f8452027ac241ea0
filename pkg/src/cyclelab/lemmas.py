"""Vertex insertion into paths, short-cycle witnesses and cycle bypasses.

Paths and cycles are vertex tuples. Path positions are reported 1-based,
so ``index == i`` means ``x`` goes between ``path[i-1]`` and ``path[i]``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .cycles import find_cycle_of_length
from .digraph import Digraph, bits, is_cycle, is_path, vertex_mask


def _require_path(d: Digraph, p: Sequence[int]) -> None:
    if not is_path(d, p):
        raise ValueError(f"{tuple(p)} is not a path of the digraph")


def _require_off(p: Sequence[int], *vertices: int) -> None:
    for x in vertices:
        if x in p:
            raise ValueError(f"vertex {x} lies on {tuple(p)}")


@dataclass(frozen=True)
class InsertionResult:
    index: int
    extended_path: tuple[int, ...]
    # which of the three sufficient hypotheses held for (path, x)
    hypotheses: tuple[bool, bool, bool]


def insertion_hypotheses(d: Digraph, p: Sequence[int], x: int) -> tuple[bool, bool, bool]:
    """Evaluate the three degree hypotheses that force ``x`` to have a partner on ``p``.

    (i)   ``d(x, P) >= m + 2``
    (ii)  ``d(x, P) >= m + 1`` and (``x -> x_1`` or ``x_m -> x`` is missing)
    (iii) ``d(x, P) >= m`` and both ``x -> x_1`` and ``x_m -> x`` are missing
    """
    m = len(p)
    deg = d.degrees(x, p)[2]
    no_head = not d.has_arc(x, p[0])
    no_tail = not d.has_arc(p[-1], x)
    return (
        deg >= m + 2,
        deg >= m + 1 and (no_head or no_tail),
        deg >= m and no_head and no_tail,
    )


def find_partner(d: Digraph, p: Sequence[int], x: int) -> Optional[InsertionResult]:
    """Smallest ``i`` with arcs ``x_i -> x -> x_{i+1}``, or ``None``."""
    _require_path(d, p)
    _require_off(p, x)
    out_x, in_x = d.out_rows[x], d.in_rows[x]
    for i in range(1, len(p)):
        if in_x >> p[i - 1] & 1 and out_x >> p[i] & 1:
            ext = tuple(p[:i]) + (x,) + tuple(p[i:])
            return InsertionResult(i, ext, insertion_hypotheses(d, p, x))
    return None


def cycle_witnesses_through(d: Digraph, c: Sequence[int], x: int) -> dict[int, tuple[int, ...]]:
    """Cycles of every length ``2..m+1`` inside ``V(c) + {x}``.

    Requires ``d(x, C) >= m + 1``, which guarantees all those lengths exist.
    The cycles are found by exact search on the induced subdigraph.
    """
    if not is_cycle(d, c):
        raise ValueError(f"{tuple(c)} is not a cycle of the digraph")
    _require_off(c, x)
    m = len(c)
    deg = d.degrees(x, c)[2]
    if deg < m + 1:
        raise ValueError(f"d(x, C) = {deg} < m + 1 = {m + 1}")
    sub, mapping = d.induced(list(c) + [x])
    back = {new: old for old, new in mapping.items()}
    out = {}
    for k in range(2, m + 2):
        found = find_cycle_of_length(sub, k)
        if found is None:
            raise RuntimeError(f"no {k}-cycle through V(C) + {{{x}}} although d(x, C) >= m + 1")
        out[k] = tuple(back[v] for v in found)
    return out


@dataclass(frozen=True)
class CrossingAudit:
    """Outcome of checking the in/out crossing bound for ``x``, ``y`` against a path."""

    consecutive_index: Optional[int]
    degree_sum: int
    epsilon: int
    m: int

    @property
    def has_consecutive(self) -> bool:
        return self.consecutive_index is not None

    @property
    def verdict(self) -> bool:
        return self.has_consecutive or self.degree_sum <= self.m + self.epsilon


def crossing_audit(d: Digraph, p: Sequence[int], x: int, y: int) -> CrossingAudit:
    """If no ``i`` has ``x_i -> x`` and ``y -> x_{i+1}``, then
    ``d-(x, P) + d+(y, P) <= m + eps`` with ``eps = [x_m -> x]``.

    ``x == y`` is allowed.
    """
    _require_path(d, p)
    _require_off(p, x, y)
    index = None
    for i in range(1, len(p)):
        if d.has_arc(p[i - 1], x) and d.has_arc(y, p[i]):
            index = i
            break
    total = d.degrees(x, p)[1] + d.degrees(y, p)[0]
    eps = 1 if d.has_arc(p[-1], x) else 0
    return CrossingAudit(index, total, eps, len(p))


@dataclass(frozen=True)
class Bypass:
    path: tuple[int, ...]
    gap: int


def _cycle_positions(c: Sequence[int]) -> dict[int, int]:
    return {v: i for i, v in enumerate(c)}


def gap_of(c: Sequence[int], start: int, end: int) -> int:
    """Number of cycle arcs from ``start`` forward to ``end``."""
    pos = _cycle_positions(c)
    return (pos[end] - pos[start]) % len(c)


def find_bypass(d: Digraph, c: Sequence[int]) -> Optional[Bypass]:
    """A bypass of ``c`` with minimum gap.

    Ties go to the smallest start vertex, then the lexicographically least
    vertex sequence.
    """
    if not is_cycle(d, c):
        raise ValueError(f"{tuple(c)} is not a cycle of the digraph")
    if len(c) == d.n:
        raise ValueError("cycle covers every vertex; no bypass possible")
    on = vertex_mask(c)
    off = ((1 << d.n) - 1) & ~on
    pos = _cycle_positions(c)
    m = len(c)

    # ends[u]: cycle vertices reachable from u through at least one off-cycle vertex
    ends = {}
    for u in c:
        start = d.out_rows[u] & off
        seen = start
        frontier = start
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= d.out_rows[v]
            frontier = nxt & off & ~seen
            seen |= frontier
        hit = 0
        for v in bits(seen):
            hit |= d.out_rows[v] & on
        ends[u] = hit & ~(1 << u)

    best_gap = None
    for u in c:
        for w in bits(ends[u]):
            g = (pos[w] - pos[u]) % m
            if best_gap is None or g < best_gap:
                best_gap = g
    if best_gap is None:
        return None

    for u in sorted(c):
        targets = 0
        for w in bits(ends[u]):
            if (pos[w] - pos[u]) % m == best_gap:
                targets |= 1 << w
        if not targets:
            continue
        path = _least_path(d, u, targets, off)
        assert path is not None
        return Bypass(path, best_gap)
    return None


def _least_path(d: Digraph, u: int, targets: int, off: int) -> Optional[tuple[int, ...]]:
    # depth-first in increasing label order; valid paths are prefix-free,
    # so the first one met is lexicographically least
    path = [u]

    def walk(v: int, free: int) -> bool:
        allowed = free | (targets if len(path) >= 2 else 0)
        for w in bits(d.out_rows[v] & allowed):
            path.append(w)
            if targets >> w & 1 or walk(w, free & ~(1 << w)):
                return True
            path.pop()
        return False

    if walk(u, off):
        return tuple(path)
    return None


def all_bypasses(d: Digraph, c: Sequence[int]):
    """Yield every bypass of ``c`` (exhaustive; meant for small digraphs)."""
    on = set(c)
    off = [v for v in range(d.n) if v not in on]
    off_mask = vertex_mask(off)

    def walk(path: list[int], free: int):
        v = path[-1]
        for w in bits(d.out_rows[v]):
            if w in on and len(path) >= 2 and w != path[0]:
                yield Bypass(tuple(path) + (w,), gap_of(c, path[0], w))
            elif free >> w & 1:
                path.append(w)
                yield from walk(path, free & ~(1 << w))
                path.pop()

    for u in c:
        yield from walk([u], off_mask)
