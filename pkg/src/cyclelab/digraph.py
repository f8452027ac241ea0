"""Loop-free digraphs on vertices ``0..n-1`` stored as per-vertex bit rows.

Row ``out[u]`` has bit ``v`` set iff the arc ``u -> v`` is present; the
in-rows are the transpose and are computed once at construction. Both
directions of a digon are stored as two separate arcs.
"""
from __future__ import annotations

from typing import Iterable, Iterator, Sequence


def bits(row: int) -> Iterator[int]:
    """Yield the set bit positions of ``row`` in increasing order."""
    while row:
        low = row & -row
        yield low.bit_length() - 1
        row ^= low


def vertex_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def mask_bit(n: int, u: int, v: int) -> int:
    """Bit position of the ordered pair ``(u, v)`` in an arc mask of order ``n``.

    Pairs are laid out row-major with the diagonal skipped.
    """
    return u * (n - 1) + v - (1 if v > u else 0)


class Digraph:
    """Immutable digraph of order ``n`` without loops or parallel arcs."""

    __slots__ = ("n", "out_rows", "in_rows")

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]] = ()):
        if n < 1:
            raise ValueError(f"order must be positive, got {n}")
        out = [0] * n
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            out[u] |= 1 << v
        self._set_rows(n, tuple(out))

    def _set_rows(self, n: int, out: tuple[int, ...]) -> None:
        inn = [0] * n
        for u, row in enumerate(out):
            for v in bits(row):
                inn[v] |= 1 << u
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "out_rows", out)
        object.__setattr__(self, "in_rows", tuple(inn))

    def __setattr__(self, name, value):
        raise AttributeError("Digraph is immutable")

    @classmethod
    def from_rows(cls, out_rows: Sequence[int]) -> Digraph:
        n = len(out_rows)
        full = (1 << n) - 1
        for u, row in enumerate(out_rows):
            if row & ~full or row >> u & 1:
                raise ValueError(f"invalid row for vertex {u}")
        d = cls.__new__(cls)
        d._set_rows(n, tuple(out_rows))
        return d

    @classmethod
    def from_mask(cls, n: int, mask: int) -> Digraph:
        """Decode an arc mask (see :func:`mask_bit` for the bit order)."""
        width = n * (n - 1)
        if not 0 <= mask < 1 << width:
            raise ValueError(f"mask {mask} out of range for n={n}")
        out = [0] * n
        pos = 0
        for u in range(n):
            for v in range(n):
                if u != v:
                    if mask >> pos & 1:
                        out[u] |= 1 << v
                    pos += 1
        return cls.from_rows(out)

    # ---- constructors for standard families -------------------------------

    @classmethod
    def complete(cls, n: int) -> Digraph:
        full = (1 << n) - 1
        return cls.from_rows([full & ~(1 << u) for u in range(n)])

    @classmethod
    def cycle(cls, n: int) -> Digraph:
        """The directed cycle ``0 -> 1 -> ... -> n-1 -> 0``."""
        return cls(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def complete_bipartite(cls, p: int, q: int) -> Digraph:
        """``K*_{p,q}`` with parts ``0..p-1`` and ``p..p+q-1``."""
        left, right = range(p), range(p, p + q)
        arcs = [(a, b) for a in left for b in right]
        arcs += [(b, a) for a, b in arcs]
        return cls(p + q, arcs)

    # ---- arcs --------------------------------------------------------------

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out_rows[u] >> v & 1)

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.out_rows[u])]

    @property
    def arc_count(self) -> int:
        return sum(row.bit_count() for row in self.out_rows)

    def to_mask(self) -> int:
        m = 0
        for u, v in self.arcs():
            m |= 1 << mask_bit(self.n, u, v)
        return m

    def with_arcs(self, arcs: Iterable[tuple[int, int]]) -> Digraph:
        return Digraph(self.n, list(self.arcs()) + list(arcs))

    def without_arcs(self, arcs: Iterable[tuple[int, int]]) -> Digraph:
        drop = set(arcs)
        return Digraph(self.n, [a for a in self.arcs() if a not in drop])

    def relabel(self, perm: Sequence[int]) -> Digraph:
        """Return the digraph with vertex ``v`` renamed ``perm[v]``."""
        return Digraph(self.n, [(perm[u], perm[v]) for u, v in self.arcs()])

    # ---- elementary queries ------------------------------------------------

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range for n={self.n}")

    def out_neighbours(self, v: int) -> list[int]:
        return list(bits(self.out_rows[v]))

    def in_neighbours(self, v: int) -> list[int]:
        return list(bits(self.in_rows[v]))

    def degrees(self, v: int, within: Iterable[int] | None = None) -> tuple[int, int, int]:
        """Return ``(out_degree, in_degree, degree)`` of ``v``.

        With ``within`` given, only neighbours inside that vertex set are
        counted; ``v`` itself must not belong to it.
        """
        self._check_vertex(v)
        if within is None:
            a = ((1 << self.n) - 1) & ~(1 << v)
        else:
            a = vertex_mask(within)
            if a >> self.n:
                raise ValueError("vertex set out of range")
            if a >> v & 1:
                raise ValueError(f"vertex {v} belongs to the restricting set")
        dout = (self.out_rows[v] & a).bit_count()
        din = (self.in_rows[v] & a).bit_count()
        return dout, din, dout + din

    def adjacency_count(self, x: int, y: int) -> int:
        """Number of arcs between ``x`` and ``y`` (0, 1 or 2)."""
        self._check_vertex(x)
        self._check_vertex(y)
        if x == y:
            raise ValueError("adjacency_count needs two distinct vertices")
        return (self.out_rows[x] >> y & 1) + (self.out_rows[y] >> x & 1)

    def _closure(self, rows: tuple[int, ...], start: int, allowed: int) -> int:
        seen = 1 << start
        frontier = seen
        while frontier:
            nxt = 0
            for u in bits(frontier):
                nxt |= rows[u]
            frontier = nxt & allowed & ~seen
            seen |= frontier
        return seen

    def reachable_from(self, v: int) -> int:
        """Bit set of vertices reachable from ``v`` (including ``v``)."""
        return self._closure(self.out_rows, v, (1 << self.n) - 1)

    def is_strong(self) -> bool:
        full = (1 << self.n) - 1
        return (
            self._closure(self.out_rows, 0, full) == full
            and self._closure(self.in_rows, 0, full) == full
        )

    def converse(self) -> Digraph:
        return Digraph.from_rows(self.in_rows)

    def is_directed_cycle(self) -> bool:
        if self.n < 2:
            return False
        for v in range(self.n):
            if self.out_rows[v].bit_count() != 1 or self.in_rows[v].bit_count() != 1:
                return False
        return self.is_strong()

    def induced(self, vertices: Iterable[int]) -> tuple[Digraph, dict[int, int]]:
        """Subdigraph induced by ``vertices`` plus the old -> new label map.

        New labels follow the increasing order of the old ones.
        """
        keep = sorted(set(vertices))
        if not keep:
            raise ValueError("cannot induce on an empty vertex set")
        for v in keep:
            self._check_vertex(v)
        mapping = {old: new for new, old in enumerate(keep)}
        arcs = [
            (mapping[u], mapping[v])
            for u in keep
            for v in bits(self.out_rows[u])
            if v in mapping
        ]
        return Digraph(len(keep), arcs), mapping

    # ---- dunder ------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.out_rows == other.out_rows

    def __hash__(self):
        return hash(self.out_rows)

    def __repr__(self):
        return f"Digraph(n={self.n}, arcs={self.arcs()})"


def is_path(d: Digraph, seq: Sequence[int]) -> bool:
    """True iff ``seq`` lists at least two distinct vertices joined by arcs."""
    if len(seq) < 2 or len(set(seq)) != len(seq):
        return False
    if any(not 0 <= v < d.n for v in seq):
        return False
    return all(d.has_arc(a, b) for a, b in zip(seq, seq[1:]))


def is_cycle(d: Digraph, seq: Sequence[int]) -> bool:
    """True iff ``seq`` is a path whose last vertex has an arc to the first."""
    return is_path(d, seq) and d.has_arc(seq[-1], seq[0])


def canonical_cycle(seq: Sequence[int]) -> tuple[int, ...]:
    """Rotate a cycle so that its smallest label comes first."""
    i = seq.index(min(seq))
    return tuple(seq[i:]) + tuple(seq[:i])
