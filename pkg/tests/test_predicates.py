import random

import networkx as nx
import pytest
from hypothesis import given, settings

from lnfgraph.constructors import case1_graph, witness
from lnfgraph.graph import (
    Graph, GraphError, complete, cycle, delete_vertices, is_connected, join, path, petersen,
    wheel,
)
from lnfgraph.predicates import (
    is_forest, is_k_connected, is_locally_foresty, is_locally_nonforesty, local_reports,
    wheel_center_check,
)

from conftest import graphs, random_graph, to_nx


def nx_locally_nonforesty(g):
    h = to_nx(g)
    return all(nx.is_forest(h.subgraph(h[v])) is False if len(h[v]) else False for v in h)


def nx_k_connected(g, k):
    return g.order > k and nx.node_connectivity(to_nx(g)) >= k


def test_examples():
    assert is_locally_nonforesty(complete(4)) == (True, None)
    assert is_locally_foresty(petersen())
    assert not is_locally_nonforesty(cycle(5))[0]
    assert is_locally_nonforesty(witness(8)) == (True, None)
    assert is_k_connected(witness(8), 3) == (True, None)
    ok, bad = is_locally_nonforesty(path(4))
    assert not ok and bad == 0


def test_empty_graph_is_rejected():
    with pytest.raises(GraphError):
        is_locally_nonforesty(Graph.empty(0))
    with pytest.raises(GraphError):
        is_locally_foresty(Graph.empty(0))


def test_wheel_hub():
    w = wheel(5)
    assert wheel_center_check(w, 5)
    assert not wheel_center_check(w, 0)
    assert not wheel_center_check(path(3), 1)


@settings(max_examples=300)
@given(graphs(min_order=1, max_order=11))
def test_local_predicates(g):
    lnf, bad = is_locally_nonforesty(g)
    assert lnf == nx_locally_nonforesty(g)
    if lnf:
        assert not is_locally_foresty(g) or g.order == 0
        assert min(g.degrees()) >= 3
    else:
        assert not wheel_center_check(g, bad)
        assert all(wheel_center_check(g, v) for v in range(bad))
    for v in range(g.order):
        assert wheel_center_check(g, v) == local_reports(g)[v].has_cycle


def test_locally_foresty_and_nonforesty_exclusive(rng):
    for _ in range(500):
        g = random_graph(rng.randint(1, 12), rng.random(), rng)
        assert not (is_locally_foresty(g) and is_locally_nonforesty(g)[0])


def test_edge_addition_preserves_nonforesty(rng):
    seen = 0
    for _ in range(2000):
        g = random_graph(rng.randint(4, 10), 0.4 + 0.6 * rng.random(), rng)
        if not is_locally_nonforesty(g)[0]:
            continue
        missing = [(u, v) for v in range(g.order) for u in range(v) if not g.has_edge(u, v)]
        for u, v in missing:
            assert is_locally_nonforesty(g.add_edge(u, v))[0]
        seen += 1
    assert seen > 50


def test_forest_methods_agree():
    rng = random.Random(11)
    for _ in range(10_000):
        n = rng.randint(0, 20)
        g = random_graph(n, rng.choice([0.05, 0.1, 0.2, 0.5]), rng)
        ours = is_forest(g, "both")
        assert ours == nx.is_forest(to_nx(g)) if n else ours


def test_k_connectivity_against_networkx(rng):
    for _ in range(600):
        g = random_graph(rng.randint(1, 12), 0.3 + 0.7 * rng.random(), rng)
        for k in (1, 2, 3):
            ok, cut = is_k_connected(g, k)
            assert ok == nx_k_connected(g, k)
            ok2, cut2 = is_k_connected(g, k, method="pairs")
            assert (ok2, cut2) == (ok, cut)
            if not ok and cut is not None:
                assert len(cut) < k
                assert not is_connected(delete_vertices(g, cut)[0])


def test_first_two_cut_is_lexicographic(rng):
    for _ in range(300):
        g = random_graph(rng.randint(4, 11), 0.5, rng)
        if not is_connected(g) or not is_k_connected(g, 2)[0]:
            continue
        ok, cut = is_k_connected(g, 3)
        pairs = [(a, c) for a in range(g.order) for c in range(a + 1, g.order)
                 if not is_connected(delete_vertices(g, {a, c})[0])]
        if pairs:
            assert cut == frozenset(pairs[0])
        else:
            assert ok


def test_connectivity_small_orders():
    assert is_k_connected(complete(3), 3) == (False, None)
    assert is_k_connected(complete(4), 3) == (True, None)
    assert is_k_connected(Graph.empty(2), 1) == (False, frozenset())
    with pytest.raises(ValueError):
        is_k_connected(complete(5), 4)


def test_constructed_graphs_pass_both_predicates():
    for n in range(4, 30):
        g = case1_graph(n)
        assert is_locally_nonforesty(g)[0] and is_k_connected(g, 3)[0]
    g = join(complete(2), Graph.empty(4))
    assert not is_locally_nonforesty(g)[0]
