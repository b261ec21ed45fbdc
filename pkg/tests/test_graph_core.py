import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from cubicaut.graph_core import (
    Graph,
    attach_at_root,
    bfs_relabel,
    complete_bipartite,
    complete_graph,
    components,
    cube,
    cycle_graph,
    disjoint_union,
    emit_dot,
    emit_graph6,
    emit_graph6_stream,
    genus,
    heawood,
    is_connected,
    is_cubic,
    parse_graph6,
    parse_graph6_stream,
    path_graph,
    petersen,
    pinch,
    prism,
    pseudocycle,
    stabilize,
    tree_root,
)


def test_rejects_loops_and_repeats():
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 0)])
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 2)])


@pytest.mark.parametrize(
    "G, g",
    [(complete_graph(4), 3), (complete_bipartite(3, 3), 4), (cube(), 5), (petersen(), 6), (heawood(), 8),
     (prism(3), 4), (cycle_graph(7), 1), (path_graph(5), 0)],
)
def test_genus(G, g):
    assert genus(G) == g


def test_named_graphs_are_cubic_and_connected():
    for G in (complete_graph(4), complete_bipartite(3, 3), cube(), petersen(), heawood(), prism(5)):
        assert is_cubic(G) and is_connected(G)
    assert nx.is_isomorphic(nx.Graph(list(petersen().edges)), nx.petersen_graph())
    assert nx.is_isomorphic(nx.Graph(list(heawood().edges)), nx.heawood_graph())


def test_pinch_keeps_genus_and_adds_valence_two_vertex():
    P = pinch(complete_graph(4), (0, 1))
    assert P.vertex_count == 5 and genus(P) == 3
    assert P.degree(4) == 2 and not P.has_edge(0, 1)
    with pytest.raises(ValueError):
        pinch(P, (0, 1))


def test_stabilize_undoes_pinch():
    K = complete_graph(4)
    rep = stabilize(pinch(pinch(K, (0, 1)), (2, 3)))
    assert rep.is_simple and rep.as_graph() == K
    assert rep.genus == 3


def test_stabilize_reports_multi_edges_loops_and_cycles():
    theta = Graph.from_edges(4, [(0, 2), (2, 1), (0, 3), (3, 1), (0, 1)])
    rep = stabilize(theta)
    assert rep.created_parallel_edges == 2 and rep.vertex_count == 2
    assert not rep.is_simple
    with pytest.raises(ValueError):
        rep.as_graph()
    loopy = Graph.from_edges(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])
    assert stabilize(loopy).created_loops == 2
    two = disjoint_union(cycle_graph(4), complete_graph(4))
    rep = stabilize(two)
    assert rep.cycle_components == 1 and rep.vertex_count == 4
    with pytest.raises(ValueError):
        stabilize(path_graph(3))


def test_tree_root():
    assert tree_root(path_graph(5)) == 2
    assert tree_root(path_graph(4)) == (1, 2)
    star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    assert tree_root(star) == 0
    with pytest.raises(ValueError):
        tree_root(cycle_graph(4))


def test_attach_merges_or_links():
    P = pinch(complete_graph(4), (0, 1))
    # valence-1 leaf of a path merges with a valence-2 pinch point
    merged = attach_at_root(path_graph(2), 1, P, 4)
    assert merged.vertex_count == 2 + 4 and merged.degree(1) == 3
    # valence-2 core vertex plus valence-2 root: joined by an edge
    linked = attach_at_root(path_graph(3), 1, P, 4)
    assert linked.vertex_count == 8 and linked.degree(1) == 3
    # edge root is pinched first
    via_edge = attach_at_root(path_graph(2), 1, complete_graph(4), (0, 1))
    assert is_connected(via_edge) and via_edge.vertex_count == 6
    with pytest.raises(ValueError):
        attach_at_root(complete_graph(4), 0, complete_graph(4), 0)


def test_pseudocycle_of_k33_minus_edge():
    H = Graph(6, tuple(e for e in complete_bipartite(3, 3).edges if e != (0, 3)))
    G = pseudocycle(H, 0, 3, 3)
    assert G.vertex_count == 18 and G.edge_count == 27
    assert is_cubic(G) and is_connected(G) and genus(G) == 10
    with pytest.raises(ValueError):
        pseudocycle(H, 0, 3, 2)
    with pytest.raises(ValueError):
        pseudocycle(complete_graph(4), 0, 1, 3)


def test_graph6_known_strings():
    assert emit_graph6(complete_graph(4)) == "C~"
    assert emit_graph6(Graph(1, ())) == "@"
    assert emit_graph6(Graph(0, ())) == "?"
    assert parse_graph6(">>graph6<<C~") == complete_graph(4)
    assert nx.to_graph6_bytes(nx.petersen_graph(), header=False).decode().strip() == "IheA@GUAo"
    assert parse_graph6("IheA@GUAo").edge_count == 15


def test_graph6_matches_networkx_on_random_graphs():
    rng = random.Random(7)
    for n in (2, 5, 17, 62, 63, 64, 70):
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.2]
        G = Graph.from_edges(n, edges)
        H = nx.Graph()
        H.add_nodes_from(range(n))
        H.add_edges_from(edges)
        ours = emit_graph6(G)
        assert ours == nx.to_graph6_bytes(H, header=False).decode().strip()
        assert parse_graph6(ours) == G


def test_graph6_rejects_malformed():
    with pytest.raises(ValueError):
        parse_graph6("C")
    with pytest.raises(ValueError):
        parse_graph6("C~~")
    with pytest.raises(ValueError):
        parse_graph6("")


@settings(max_examples=60)
@given(st.integers(1, 40), st.data())
def test_graph6_round_trip(n, data):
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = data.draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    G = Graph.from_edges(n, chosen)
    assert parse_graph6(emit_graph6(G)) == G


def test_streams_and_dot():
    gs = [complete_graph(4), petersen()]
    assert parse_graph6_stream(emit_graph6_stream(gs)) == gs
    dot = emit_dot(complete_graph(4), "K4")
    assert dot.startswith("graph K4 {") and dot.count("--") == 6


@settings(max_examples=40)
@given(st.permutations(list(range(10))))
def test_relabel_preserves_structure(perm):
    G = petersen()
    H = G.relabel(perm)
    assert genus(H) == genus(G) and is_cubic(H)
    assert nx.is_isomorphic(nx.Graph(list(G.edges)), nx.Graph(list(H.edges)))


def test_bfs_relabel_starts_at_root_and_components():
    G = bfs_relabel(cube(), 5)
    assert is_cubic(G)
    two = disjoint_union(complete_graph(4), complete_graph(4))
    assert [len(c) for c in components(two)] == [4, 4]
    assert not is_connected(two)
