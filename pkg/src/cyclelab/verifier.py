"""Exhaustive and sampled sweeps over labelled digraphs.

Digraphs of order ``n`` are indexed by their arc mask (bit ``u*(n-1) + v -
[v > u]`` set iff ``u -> v``), so an exhaustive sweep covers
``0 <= mask < 2**(n*(n-1))``.

Sampled sweeps draw masks from the splitmix64 stream seeded with ``seed``:
output ``t`` is ``mix(seed + (t+1) * 0x9E3779B97F4A7C15 mod 2**64)`` with
the usual splitmix64 finaliser. Sample ``k`` takes outputs ``k*W .. k*W+W-1``
(``W = ceil(n*(n-1) / 64)``), concatenates them little-endian, and keeps the
low ``n*(n-1)`` bits as its mask. Index ranges of a sampled sweep refer to
``k``, so ranges can be split across workers without coordination.

Every sweep applies the filters strong, then not-a-directed-cycle (skipped
for Theorem C), then condition C, and inspects the survivors.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from . import _kernel
from .conditions import Condition, ConditionReport, check_condition
from .cycles import SpectrumReport, cycle_spectrum, find_cycle_of_length
from .digraph import Digraph, bits

EXHAUSTIVE_MAX_ORDER = 6
SAMPLED_MAX_ORDER = 10
MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15

MAIN = "main"
THEOREM_C = "c"
MINE = "mine"
_MODES = {MAIN: _kernel.MODE_MAIN, THEOREM_C: _kernel.MODE_THEOREM_C, MINE: _kernel.MODE_MINE}

COMPLETE_BIPARTITE = "complete-bipartite"
BIPARTITE_MINUS_ARC = "complete-bipartite-minus-one-arc"
DIRECTED_CYCLE = "directed-cycle"
OTHER = "other"

FILTERS = ("strong", "not_directed_cycle", "condition_c")


class TheoremViolation(AssertionError):
    """A mined digraph contradicts the (n-2)-or-(n-1) cycle theorem."""

    def __init__(self, records):
        self.records = records
        masks = ", ".join(str(r.mask) for r in records)
        super().__init__(f"{len(records)} digraph(s) without an (n-1)- or (n-2)-cycle: {masks}")


# ---- index space -----------------------------------------------------------


def mask_width(n: int) -> int:
    return n * (n - 1)


def splitmix64(seed: int, t: int) -> int:
    """Output ``t`` (0-based) of the splitmix64 stream started at ``seed``."""
    z = (seed + (t + 1) * GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def sample_mask(n: int, seed: int, k: int) -> int:
    width = mask_width(n)
    nwords = (width + 63) // 64
    m = 0
    for j in range(nwords):
        m |= splitmix64(seed, k * nwords + j) << (64 * j)
    return m & ((1 << width) - 1)


@dataclass(frozen=True)
class EnumerationCursor:
    """Position in an index space: exhaustive masks, or sample numbers when ``seed`` is set."""

    n: int
    lo: int
    hi: int
    seed: Optional[int] = None

    def __post_init__(self):
        if self.seed is None:
            if not 2 <= self.n <= EXHAUSTIVE_MAX_ORDER:
                raise ValueError(f"exhaustive sweeps need 2 <= n <= {EXHAUSTIVE_MAX_ORDER}")
            limit = 1 << mask_width(self.n)
            if not 0 <= self.lo <= self.hi <= limit:
                raise ValueError(f"range {self.lo}:{self.hi} outside 0:{limit}")
        else:
            if not 2 <= self.n <= SAMPLED_MAX_ORDER:
                raise ValueError(f"sampled sweeps need 2 <= n <= {SAMPLED_MAX_ORDER}")
            if not 0 <= self.lo <= self.hi:
                raise ValueError(f"invalid sample range {self.lo}:{self.hi}")
            if not 0 <= self.seed <= MASK64:
                raise ValueError("seed must fit in 64 bits")

    @property
    def sampled(self) -> bool:
        return self.seed is not None

    def mask_at(self, index: int) -> int:
        return sample_mask(self.n, self.seed, index) if self.sampled else index

    def split(self, parts: int) -> list[EnumerationCursor]:
        size = self.hi - self.lo
        parts = max(1, min(parts, size)) if size else 1
        bounds = [self.lo + size * i // parts for i in range(parts + 1)]
        return [replace(self, lo=a, hi=b) for a, b in zip(bounds, bounds[1:])]


def full_range(n: int, seed: Optional[int] = None, samples: Optional[int] = None) -> EnumerationCursor:
    if seed is None:
        return EnumerationCursor(n, 0, 1 << mask_width(n))
    if samples is None:
        raise ValueError("sampled sweeps need an explicit sample count")
    return EnumerationCursor(n, 0, samples, seed)


def scan(
    n: int,
    lo: int = 0,
    hi: Optional[int] = None,
    filters: Sequence[str] = FILTERS,
    seed: Optional[int] = None,
) -> Iterator[tuple[int, Digraph]]:
    """Yield ``(index, digraph)`` for every index in ``[lo, hi)`` passing ``filters``.

    Filters are applied in the order given; known names are ``strong``,
    ``not_directed_cycle`` and ``condition_c``.
    """
    if hi is None:
        hi = 1 << mask_width(n) if seed is None else lo
    cursor = EnumerationCursor(n, lo, hi, seed)
    tests = []
    for name in filters:
        if name == "strong":
            tests.append(Digraph.is_strong)
        elif name == "not_directed_cycle":
            tests.append(lambda d: not d.is_directed_cycle())
        elif name == "condition_c":
            tests.append(lambda d: check_condition(d, Condition.C).verdict)
        else:
            raise ValueError(f"unknown filter {name!r}")
    for i in range(cursor.lo, cursor.hi):
        d = Digraph.from_mask(n, cursor.mask_at(i))
        if all(t(d) for t in tests):
            yield i, d


# ---- classification --------------------------------------------------------


def classify_extremal(d: Digraph) -> str:
    """Tag ``d`` as ``K*_{p,q}``, ``K*_{p,q}`` minus one arc, a directed cycle, or other.

    Both bipartite families have the same underlying adjacency, so the
    parts must be the components of the non-adjacency graph; there must be
    exactly two of them and each must be independent.
    """
    n = d.n
    if n < 2:
        raise ValueError("classify_extremal needs n >= 2")
    full = (1 << n) - 1
    adj = [d.out_rows[v] | d.in_rows[v] for v in range(n)]
    non_adj = [full & ~adj[v] & ~(1 << v) for v in range(n)]
    seen = 0
    parts = []
    for v in range(n):
        if seen >> v & 1:
            continue
        comp = 1 << v
        frontier = comp
        while frontier:
            nxt = 0
            for u in bits(frontier):
                nxt |= non_adj[u]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        parts.append(comp)
    if len(parts) == 2 and all(adj[v] & part == 0 for part in parts for v in bits(part)):
        p, q = (part.bit_count() for part in parts)
        missing = 2 * p * q - d.arc_count
        if missing == 0:
            return COMPLETE_BIPARTITE
        if missing == 1:
            return BIPARTITE_MINUS_ARC
    if d.is_directed_cycle():
        return DIRECTED_CYCLE
    return OTHER


# ---- summaries -------------------------------------------------------------


@dataclass(frozen=True)
class CounterexampleRecord:
    index: int
    mask: int
    digraph: Digraph
    condition: ConditionReport
    spectrum: SpectrumReport
    classification: str

    @classmethod
    def build(cls, n: int, index: int, mask: int) -> CounterexampleRecord:
        d = Digraph.from_mask(n, mask)
        return cls(index, mask, d, check_condition(d, Condition.C), cycle_spectrum(d), classify_extremal(d))


@dataclass(frozen=True)
class VerificationSummary:
    theorem: str
    n: int
    lo: int
    hi: int
    seed: Optional[int] = None
    total: int = 0
    strong: int = 0
    directed_cycles_excluded: int = 0
    condition_c: int = 0
    hamiltonian: int = 0
    with_n_minus_1: int = 0
    with_n_minus_2: int = 0
    counterexamples: tuple[CounterexampleRecord, ...] = ()

    COUNT_FIELDS = (
        "total",
        "strong",
        "directed_cycles_excluded",
        "condition_c",
        "hamiltonian",
        "with_n_minus_1",
        "with_n_minus_2",
    )

    @property
    def verified(self) -> bool:
        return not self.counterexamples

    def counts(self) -> tuple[int, ...]:
        return tuple(getattr(self, f) for f in self.COUNT_FIELDS)

    def merge(self, other: VerificationSummary) -> VerificationSummary:
        """Combine with the summary of the range directly after this one."""
        if (other.theorem, other.n, other.seed) != (self.theorem, self.n, self.seed):
            raise ValueError("cannot merge summaries of different sweeps")
        if other.lo != self.hi:
            raise ValueError(f"ranges {self.lo}:{self.hi} and {other.lo}:{other.hi} are not adjacent")
        sums = {f: getattr(self, f) + getattr(other, f) for f in self.COUNT_FIELDS}
        return replace(self, hi=other.hi, counterexamples=self.counterexamples + other.counterexamples, **sums)


def merge_summaries(parts: Iterable[VerificationSummary]) -> VerificationSummary:
    parts = list(parts)
    if not parts:
        raise ValueError("nothing to merge")
    out = parts[0]
    for p in parts[1:]:
        out = out.merge(p)
    return out


def _kernel_counts(cursor: EnumerationCursor, mode: str) -> tuple[np.ndarray, np.ndarray]:
    counts = np.zeros(_kernel.N_COUNTS, np.int64)
    seed = np.uint64(cursor.seed if cursor.sampled else 0)
    flagged = _kernel.scan_kernel(cursor.n, cursor.lo, cursor.hi, cursor.sampled, seed, _MODES[mode], counts)
    return counts, flagged


def _python_counts(cursor: EnumerationCursor, mode: str) -> tuple[np.ndarray, list[int]]:
    n = cursor.n
    counts = np.zeros(_kernel.N_COUNTS, np.int64)
    flagged = []
    for i in range(cursor.lo, cursor.hi):
        d = Digraph.from_mask(n, cursor.mask_at(i))
        counts[_kernel.TOTAL] += 1
        if not d.is_strong():
            continue
        counts[_kernel.STRONG] += 1
        if mode != THEOREM_C and d.is_directed_cycle():
            counts[_kernel.DIRECTED_CYCLES] += 1
            continue
        if not check_condition(d, Condition.C).verdict:
            continue
        counts[_kernel.SURVIVORS] += 1
        ham = find_cycle_of_length(d, n) is not None
        n1 = find_cycle_of_length(d, n - 1) is not None
        n2 = n - 2 >= 2 and find_cycle_of_length(d, n - 2) is not None
        counts[_kernel.HAMILTONIAN] += ham
        counts[_kernel.WITH_N1] += n1
        counts[_kernel.WITH_N2] += n2
        if mode == MAIN:
            flag = not (n1 or n2)
        elif mode == THEOREM_C:
            flag = not ham
        else:
            flag = not n1
        if flag:
            flagged.append(i)
    return counts, flagged


def _run(cursor: EnumerationCursor, mode: str, engine: str) -> VerificationSummary:
    if engine == "kernel":
        counts, flagged = _kernel_counts(cursor, mode)
    elif engine == "python":
        counts, flagged = _python_counts(cursor, mode)
    else:
        raise ValueError(f"unknown engine {engine!r}")
    records = tuple(CounterexampleRecord.build(cursor.n, int(i), cursor.mask_at(int(i))) for i in flagged)
    c = [int(x) for x in counts]
    return VerificationSummary(
        theorem=mode,
        n=cursor.n,
        lo=cursor.lo,
        hi=cursor.hi,
        seed=cursor.seed,
        total=c[_kernel.TOTAL],
        strong=c[_kernel.STRONG],
        directed_cycles_excluded=c[_kernel.DIRECTED_CYCLES],
        condition_c=c[_kernel.SURVIVORS],
        hamiltonian=c[_kernel.HAMILTONIAN],
        with_n_minus_1=c[_kernel.WITH_N1],
        with_n_minus_2=c[_kernel.WITH_N2],
        counterexamples=records,
    )


def _run_packed(args):
    return _run(*args)


def sweep(
    cursor: EnumerationCursor,
    mode: str,
    jobs: int = 1,
    engine: str = "kernel",
) -> VerificationSummary:
    """Run one sweep, optionally split into ``jobs`` contiguous ranges.

    Results are merged in range order, so the outcome does not depend on
    ``jobs``.
    """
    if mode not in _MODES:
        raise ValueError(f"unknown sweep mode {mode!r}")
    if mode in (MAIN, MINE) and cursor.n < 4:
        raise ValueError("the (n-1)/(n-2) cycle sweep needs n >= 4")
    pieces = cursor.split(jobs)
    if jobs <= 1 or len(pieces) == 1:
        return merge_summaries(_run(p, mode, engine) for p in pieces)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(_run_packed, [(p, mode, engine) for p in pieces]))
    return merge_summaries(results)


def verify_main_theorem(cursor: EnumerationCursor, jobs: int = 1, engine: str = "kernel") -> VerificationSummary:
    """Every strong, non-cycle digraph meeting condition C has an (n-1)- or (n-2)-cycle."""
    return sweep(cursor, MAIN, jobs, engine)


def verify_theorem_c(cursor: EnumerationCursor, jobs: int = 1, engine: str = "kernel") -> VerificationSummary:
    """Every strong digraph meeting condition C is Hamiltonian."""
    return sweep(cursor, THEOREM_C, jobs, engine)


def mine_conjecture(cursor: EnumerationCursor, jobs: int = 1, engine: str = "kernel") -> list[CounterexampleRecord]:
    """Survivors of the filter chain that have no (n-1)-cycle.

    Raises :class:`TheoremViolation` after the sweep if any of them also
    lacks an (n-2)-cycle.
    """
    records = list(sweep(cursor, MINE, jobs, engine).counterexamples)
    n = cursor.n
    bad = [r for r in records if (n - 2) not in r.spectrum.witnesses]
    if bad:
        raise TheoremViolation(bad)
    return records


def survivor_masks(cursor: EnumerationCursor) -> list[int]:
    """Masks passing strong, not-a-directed-cycle and condition C, in index order."""
    counts = np.zeros(_kernel.N_COUNTS, np.int64)
    seed = np.uint64(cursor.seed if cursor.sampled else 0)
    flagged = _kernel.scan_kernel(cursor.n, cursor.lo, cursor.hi, cursor.sampled, seed, _kernel.MODE_SURVIVORS, counts)
    return [cursor.mask_at(int(i)) for i in flagged]


def permuted_masks(n: int, mask: int) -> set[int]:
    """Masks of every relabelling of the digraph with arc mask ``mask``."""
    d = Digraph.from_mask(n, mask)
    return {d.relabel(p).to_mask() for p in itertools.permutations(range(n))}
