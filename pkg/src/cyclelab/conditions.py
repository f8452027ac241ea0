"""Good pairs and the pairwise degree conditions for Hamiltonicity.

Four conditions are supported, each constraining a different universe of
non-adjacent pairs ``{x, y}``:

``A``
    pairs with a common in-neighbour; ``min(d(x), d(y)) >= n-1`` and
    ``d(x) + d(y) >= 2n-1``.
``B``
    good pairs; ``min(d+(x) + d-(y), d-(x) + d+(y)) >= n``.
``C``
    good pairs; ``d(x) + d(y) >= 2n-1`` and the semi-degree minimum above
    is at least ``n-1``.
``MEYNIEL``
    all non-adjacent pairs; ``d(x) + d(y) >= 2n-1``.

A good pair is a non-adjacent pair with a common in- or out-neighbour.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .digraph import Digraph


class Condition(str, enum.Enum):
    A = "a"
    B = "b"
    C = "c"
    MEYNIEL = "meyniel"

    @classmethod
    def parse(cls, tag) -> Condition:
        if isinstance(tag, cls):
            return tag
        try:
            return cls(str(tag).lower())
        except ValueError:
            raise ValueError(f"unknown condition {tag!r}") from None


@dataclass(frozen=True)
class GoodPair:
    x: int
    y: int
    witness: int
    # "out": witness is a common out-neighbour (x -> w, y -> w); "in": w -> x, w -> y
    direction: str


@dataclass(frozen=True)
class PairCheck:
    """One checked pair: each entry of ``checks`` is ``(label, value, threshold)``."""

    x: int
    y: int
    witness: Optional[int]
    direction: Optional[str]
    checks: tuple[tuple[str, int, int], ...]

    @property
    def passed(self) -> bool:
        return all(value >= threshold for _, value, threshold in self.checks)


@dataclass(frozen=True)
class ConditionReport:
    condition: Condition
    n: int
    pairs: tuple[PairCheck, ...]

    @property
    def verdict(self) -> bool:
        return all(p.passed for p in self.pairs)

    @property
    def vacuous(self) -> bool:
        return not self.pairs

    @property
    def failures(self) -> tuple[PairCheck, ...]:
        return tuple(p for p in self.pairs if not p.passed)


def _non_adjacent_pairs(d: Digraph):
    for x in range(d.n):
        adj = d.out_rows[x] | d.in_rows[x]
        for y in range(x + 1, d.n):
            if not adj >> y & 1:
                yield x, y


def _lowest(row: int) -> int:
    return (row & -row).bit_length() - 1


def good_pairs(d: Digraph) -> list[GoodPair]:
    """All good pairs ``x < y`` with their smallest witness (out preferred on ties)."""
    result = []
    for x, y in _non_adjacent_pairs(d):
        common_out = d.out_rows[x] & d.out_rows[y]
        common_in = d.in_rows[x] & d.in_rows[y]
        either = common_out | common_in
        if not either:
            continue
        w = _lowest(either)
        result.append(GoodPair(x, y, w, "out" if common_out >> w & 1 else "in"))
    return result


def _common_in_pairs(d: Digraph) -> list[GoodPair]:
    result = []
    for x, y in _non_adjacent_pairs(d):
        common_in = d.in_rows[x] & d.in_rows[y]
        if common_in:
            result.append(GoodPair(x, y, _lowest(common_in), "in"))
    return result


def check_condition(d: Digraph, which) -> ConditionReport:
    """Evaluate one of the conditions A, B, C or Meyniel on every required pair."""
    cond = Condition.parse(which)
    n = d.n
    if n < 2:
        raise ValueError("conditions are defined for n >= 2")
    degs = [d.degrees(v) for v in range(n)]

    if cond is Condition.A:
        universe = [(g.x, g.y, g.witness, g.direction) for g in _common_in_pairs(d)]
    elif cond is Condition.MEYNIEL:
        universe = [(x, y, None, None) for x, y in _non_adjacent_pairs(d)]
    else:
        universe = [(g.x, g.y, g.witness, g.direction) for g in good_pairs(d)]

    pairs = []
    for x, y, w, direction in universe:
        ox, ix, dx = degs[x]
        oy, iy, dy = degs[y]
        semi = min(ox + iy, ix + oy)
        if cond is Condition.A:
            checks = (("min_degree", min(dx, dy), n - 1), ("degree_sum", dx + dy, 2 * n - 1))
        elif cond is Condition.B:
            checks = (("semi_sum_min", semi, n),)
        elif cond is Condition.C:
            checks = (("degree_sum", dx + dy, 2 * n - 1), ("semi_sum_min", semi, n - 1))
        else:
            checks = (("degree_sum", dx + dy, 2 * n - 1),)
        pairs.append(PairCheck(x, y, w, direction, checks))
    return ConditionReport(cond, n, tuple(pairs))


def satisfies(d: Digraph, which) -> bool:
    return check_condition(d, which).verdict
