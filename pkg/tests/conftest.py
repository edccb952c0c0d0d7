import random
from itertools import permutations

import networkx as nx
import pytest
from hypothesis import strategies as st

from lnfgraph.graph import Graph


def random_graph(n, p, rng):
    edges = [(u, v) for v in range(n) for u in range(v) if rng.random() < p]
    return Graph.from_edges(n, edges)


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.order))
    h.add_edges_from(g.edges())
    return h


def brute_canonical(g):
    """Lexicographically smallest sorted edge list over all relabelings (tiny n only)."""
    edges = g.edges()
    best = None
    for perm in permutations(range(g.order)):
        key = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in edges))
        if best is None or key < best:
            best = key
    return best


@st.composite
def graphs(draw, min_order=1, max_order=12):
    n = draw(st.integers(min_order, max_order))
    pairs = [(u, v) for v in range(n) for u in range(v)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, chosen) if keep])


@pytest.fixture
def rng():
    return random.Random(20241015)
