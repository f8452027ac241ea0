import random

import networkx as nx
from hypothesis import strategies as st

from cyclelab import Digraph


def random_digraph(rng: random.Random, n: int, density: float | None = None) -> Digraph:
    p = rng.random() if density is None else density
    return Digraph(n, [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p])


def random_path(rng: random.Random, d: Digraph, tries: int = 20):
    """A random path with 2..n-1 vertices, or None."""
    for _ in range(tries):
        target = rng.randint(2, d.n - 1)
        path = [rng.randrange(d.n)]
        while len(path) < target:
            options = [w for w in d.out_neighbours(path[-1]) if w not in path]
            if not options:
                break
            path.append(rng.choice(options))
        if len(path) >= 2:
            return tuple(path)
    return None


def random_cycle(rng: random.Random, d: Digraph, tries: int = 20):
    """A random non-Hamiltonian cycle found by walking until a vertex repeats."""
    for _ in range(tries):
        walk = [rng.randrange(d.n)]
        while True:
            options = d.out_neighbours(walk[-1])
            if not options:
                break
            w = rng.choice(options)
            if w in walk:
                cyc = tuple(walk[walk.index(w):])
                if len(cyc) < d.n:
                    return cyc
                break
            walk.append(w)
    return None


def to_nx(d: Digraph) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(range(d.n))
    g.add_edges_from(d.arcs())
    return g


def digraphs(min_n=2, max_n=6):
    return st.integers(min_n, max_n).flatmap(
        lambda n: st.integers(0, (1 << (n * (n - 1))) - 1).map(lambda m: Digraph.from_mask(n, m))
    )
