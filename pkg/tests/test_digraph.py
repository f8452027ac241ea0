import itertools

import networkx as nx
import pytest
from hypothesis import given

from cyclelab import Digraph, canonical_cycle, is_cycle, is_path
from cyclelab.digraph import mask_bit

from helpers import digraphs, random_digraph, to_nx


class TestConstruction:
    def test_rejects_loops_and_out_of_range(self):
        with pytest.raises(ValueError, match="loop"):
            Digraph(3, [(1, 1)])
        with pytest.raises(ValueError):
            Digraph(3, [(0, 3)])
        with pytest.raises(ValueError):
            Digraph(0)

    def test_duplicate_arcs_collapse(self):
        d = Digraph(3, [(0, 1), (0, 1), (1, 0)])
        assert d.arc_count == 2
        assert d.adjacency_count(0, 1) == 2

    def test_immutable(self):
        d = Digraph.cycle(3)
        with pytest.raises(AttributeError):
            d.n = 4

    def test_mask_bit_layout(self):
        positions = [mask_bit(3, u, v) for u in range(3) for v in range(3) if u != v]
        assert positions == list(range(6))
        assert Digraph.from_mask(3, 63) == Digraph.complete(3)
        assert Digraph.from_mask(3, 1).arcs() == [(0, 1)]
        assert Digraph.from_mask(3, 1 << 2).arcs() == [(1, 0)]

    def test_mask_roundtrip_exhaustive_n3(self):
        for m in range(1 << 6):
            assert Digraph.from_mask(3, m).to_mask() == m

    def test_mask_out_of_range(self):
        with pytest.raises(ValueError):
            Digraph.from_mask(3, 64)


class TestDegrees:
    def test_complete(self):
        k4 = Digraph.complete(4)
        for v in range(4):
            assert k4.degrees(v) == (3, 3, 6)

    def test_cycle(self):
        c5 = Digraph.cycle(5)
        for v in range(5):
            assert c5.degrees(v) == (1, 1, 2)

    def test_complete_bipartite_by_arc_count(self, k22):
        arcs = k22.arcs()
        for v in range(4):
            outs = sum(1 for a, _ in arcs if a == v)
            ins = sum(1 for _, b in arcs if b == v)
            assert (outs, ins) == (2, 2)
            assert k22.degrees(v) == (outs, ins, outs + ins)

    def test_restricted(self):
        d = Digraph(4, [(0, 1), (2, 0), (0, 3), (3, 0)])
        assert d.degrees(0, [1, 2]) == (1, 1, 2)
        assert d.degrees(0, [3]) == (1, 1, 2)
        with pytest.raises(ValueError):
            d.degrees(0, [0, 1])
        with pytest.raises(ValueError):
            d.degrees(4)

    @given(digraphs())
    def test_handshake(self, d):
        assert sum(d.degrees(v)[0] for v in range(d.n)) == d.arc_count
        assert sum(d.degrees(v)[1] for v in range(d.n)) == d.arc_count

    @given(digraphs(min_n=3))
    def test_restriction_splits(self, d):
        v = d.n - 1
        a = list(range(0, v, 2))
        rest = [u for u in range(d.n) if u != v and u not in a]
        left, right, total = d.degrees(v, a), d.degrees(v, rest), d.degrees(v)
        assert tuple(x + y for x, y in zip(left, right)) == total


class TestAdjacency:
    def test_examples(self):
        assert Digraph.complete(4).adjacency_count(0, 1) == 2
        c5 = Digraph.cycle(5)
        assert c5.adjacency_count(0, 1) == 1
        assert c5.adjacency_count(0, 2) == 0
        with pytest.raises(ValueError):
            c5.adjacency_count(2, 2)

    @given(digraphs())
    def test_converse_invariant(self, d):
        c = d.converse()
        for x, y in itertools.combinations(range(d.n), 2):
            assert d.adjacency_count(x, y) == c.adjacency_count(x, y)


class TestStrong:
    def test_examples(self):
        assert Digraph.cycle(4).is_strong()
        assert not Digraph(3, [(0, 1), (0, 2), (1, 2)]).is_strong()
        assert Digraph.complete_bipartite(2, 3).is_strong()
        assert Digraph(1).is_strong()
        assert not Digraph(2).is_strong()

    def test_matches_networkx_exhaustive_n4(self):
        for m in range(1 << 12):
            d = Digraph.from_mask(4, m)
            assert d.is_strong() == nx.is_strongly_connected(to_nx(d))

    @given(digraphs())
    def test_converse_invariant(self, d):
        assert d.is_strong() == d.converse().is_strong()


class TestConverse:
    def test_cycle(self):
        assert Digraph.cycle(5).converse() == Digraph(5, [((i + 1) % 5, i) for i in range(5)])

    @given(digraphs())
    def test_involution_and_degree_swap(self, d):
        c = d.converse()
        assert c.converse() == d
        for v in range(d.n):
            o, i, t = d.degrees(v)
            assert c.degrees(v) == (i, o, t)


class TestDirectedCycle:
    def test_examples(self):
        c6 = Digraph.cycle(6)
        assert c6.is_directed_cycle()
        assert not c6.with_arcs([(0, 3)]).is_directed_cycle()
        two = Digraph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
        assert not two.is_directed_cycle()
        assert Digraph(5, [(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)]).is_directed_cycle()

    @given(digraphs())
    def test_implies_strong_with_n_arcs(self, d):
        if d.is_directed_cycle():
            assert d.is_strong() and d.arc_count == d.n


class TestInduced:
    def test_examples(self):
        sub, mapping = Digraph.complete(4).induced({0, 1, 2})
        assert sub == Digraph.complete(3)
        assert mapping == {0: 0, 1: 1, 2: 2}
        sub, _ = Digraph.cycle(5).induced([0, 1, 2])
        assert sub == Digraph(3, [(0, 1), (1, 2)])
        with pytest.raises(ValueError):
            Digraph.cycle(3).induced([])

    def test_relabels_in_order(self):
        d = Digraph(5, [(4, 2), (2, 4), (1, 4)])
        sub, mapping = d.induced([4, 2])
        assert mapping == {2: 0, 4: 1}
        assert sub.arcs() == [(0, 1), (1, 0)]

    @given(digraphs(min_n=1))
    def test_identity(self, d):
        assert d.induced(range(d.n))[0] == d


def test_path_and_cycle_validation():
    d = Digraph.cycle(4)
    assert is_path(d, (0, 1, 2))
    assert not is_path(d, (0,))
    assert not is_path(d, (0, 2))
    assert not is_path(d, (0, 1, 0))
    assert is_cycle(d, (0, 1, 2, 3))
    assert is_cycle(d, (2, 3, 0, 1))
    assert not is_cycle(d, (0, 1, 2))
    assert is_cycle(Digraph(2, [(0, 1), (1, 0)]), (0, 1))
    assert canonical_cycle((2, 3, 0, 1)) == (0, 1, 2, 3)


def test_relabel_preserves_structure(rng):
    d = random_digraph(rng, 6)
    perm = list(range(6))
    rng.shuffle(perm)
    e = d.relabel(perm)
    assert e.arc_count == d.arc_count
    assert all(e.has_arc(perm[u], perm[v]) for u, v in d.arcs())
