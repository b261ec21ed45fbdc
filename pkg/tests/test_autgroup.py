import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st
from networkx.algorithms.isomorphism import GraphMatcher

from cubicaut.autgroup import (
    DISJOINT_CYCLES,
    DISJOINT_EDGES,
    DISJOINT_STARS,
    WHOLE_GRAPH,
    M_of,
    are_isomorphic,
    automorphism_group,
    canonical_form,
    classify_minimal_orbit,
    edge_orbits,
    edge_preserving_order,
    edge_transitive_bound,
    group_order_divides_wormald,
    group_report,
    is_edge_transitive,
    pi_of,
)
from cubicaut.enumeration import enumerate_cubic
from cubicaut.graph_core import (
    Graph,
    complete_bipartite,
    complete_graph,
    cube,
    cycle_graph,
    heawood,
    path_graph,
    petersen,
    prism,
)
from oracles import brute_force_aut_count, to_nx


def _is_aut(G, perm):
    return {(min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in G.edges} == set(G.edges)


@pytest.mark.parametrize(
    "G, order",
    [(complete_graph(4), 24), (complete_bipartite(3, 3), 72), (cube(), 48), (petersen(), 120),
     (heawood(), 336), (prism(3), 12), (Graph(2, ((0, 1),)), 2), (Graph(1, ()), 1), (Graph(3, ()), 6),
     (cycle_graph(9), 18), (path_graph(6), 2)],
)
def test_known_orders(G, order):
    grp = automorphism_group(G)
    assert grp.order == order
    assert all(_is_aut(G, p) for p in grp.generators)


@pytest.mark.parametrize("v", [4, 6, 8])
def test_brute_force_agreement(v):
    for G in enumerate_cubic(v):
        assert automorphism_group(G).order == brute_force_aut_count(G)


def test_small_noncubic_brute_force():
    rng = random.Random(3)
    for _ in range(40):
        n = rng.randint(2, 7)
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.45]
        G = Graph.from_edges(n, edges)
        assert automorphism_group(G).order == brute_force_aut_count(G)


def test_orders_match_vf2_on_random_cubic_graphs():
    for seed in range(40):
        H = nx.random_regular_graph(3, 16, seed=seed)
        G = Graph.from_edges(16, list(H.edges()))
        count = sum(1 for _ in GraphMatcher(H, H).isomorphisms_iter())
        assert automorphism_group(G).order == count


@settings(max_examples=25, deadline=None)
@given(st.permutations(list(range(14))))
def test_order_and_canonical_form_invariant_under_relabelling(perm):
    G = heawood()
    H = G.relabel(perm)
    assert automorphism_group(H).order == 336
    assert canonical_form(H) == canonical_form(G)


def test_relabel_invariance_100_per_graph():
    rng = random.Random(11)
    for G in (petersen(), cube(), prism(5)):
        want = automorphism_group(G).order
        for _ in range(100):
            p = list(range(G.vertex_count))
            rng.shuffle(p)
            assert automorphism_group(G.relabel(p)).order == want


def test_orbit_partitions_consistent():
    for G in enumerate_cubic(10):
        grp = automorphism_group(G)
        assert sum(len(o) for o in grp.edge_orbits) == G.edge_count
        assert all(grp.order % len(o) == 0 for o in grp.edge_orbits)
        assert sum(len(o) for o in grp.vertex_orbits) == G.vertex_count
        assert all(grp.order % len(o) == 0 for o in grp.vertex_orbits)
        prod = 1
        for x in grp.basic_orbit_lengths:
            prod *= x
        assert prod == grp.order
        # orbits recomputed from generators alone
        for orb in grp.edge_orbits:
            e = orb[0]
            reach = {e}
            frontier = [e]
            while frontier:
                u, v = frontier.pop()
                for p in grp.generators:
                    f = (min(p[u], p[v]), max(p[u], p[v]))
                    if f not in reach:
                        reach.add(f)
                        frontier.append(f)
            assert reach == set(orb)


def test_edge_orbit_examples():
    assert [len(o) for o in edge_orbits(complete_graph(4))] == [6]
    assert M_of(complete_graph(4)) == 6
    assert is_edge_transitive(heawood())
    assert not is_edge_transitive(prism(5))


def test_edge_preserving_order_matches_orbit_stabilizer():
    for G in enumerate_cubic(10) + [petersen(), heawood()]:
        grp = automorphism_group(G)
        for orb in grp.edge_orbits:
            assert edge_preserving_order(G, orb[0]) * len(orb) == grp.order
        assert pi_of(G, grp) == grp.order // M_of(G, grp)
    with pytest.raises(ValueError):
        edge_preserving_order(complete_graph(4).relabel([0, 1, 2, 3]), (0, 0))


def test_pi_tetrahedron():
    assert pi_of(complete_graph(4)) == 4


def test_wormald_divisibility():
    assert group_order_divides_wormald(complete_graph(4))
    assert group_order_divides_wormald(complete_bipartite(3, 3))
    for v in (4, 6, 8, 10, 12):
        assert all(group_order_divides_wormald(G) for G in enumerate_cubic(v))
    with pytest.raises(ValueError):
        group_order_divides_wormald(cycle_graph(5))


def test_edge_transitive_bound():
    assert edge_transitive_bound(8) == 2688
    assert 336 <= edge_transitive_bound(8)
    with pytest.raises(ValueError):
        edge_transitive_bound(1)


def test_isomorphism():
    assert not are_isomorphic(complete_bipartite(3, 3), prism(3))
    assert are_isomorphic(petersen(), petersen().relabel(list(reversed(range(10)))))
    assert not are_isomorphic(complete_graph(4), cycle_graph(4))


def test_canonical_forms_separate_census():
    graphs = enumerate_cubic(12)
    forms = {canonical_form(G.relabel(list(reversed(range(12))))) for G in graphs}
    assert len(forms) == len(graphs) == 85


def test_canonical_form_with_colours():
    G = cycle_graph(4)
    a = canonical_form(G, [1, 0, 0, 0])
    b = canonical_form(G, [0, 0, 1, 0])
    c = canonical_form(G, [1, 1, 0, 0])
    assert a == b and a != c


def test_classify_minimal_orbit_shapes():
    assert classify_minimal_orbit(complete_graph(4)).kind == WHOLE_GRAPH
    assert classify_minimal_orbit(prism(5)).kind == DISJOINT_EDGES
    seen = set()
    for v in (8, 10, 12):
        for G in enumerate_cubic(v):
            seen.add(classify_minimal_orbit(G).kind)
    assert seen == {WHOLE_GRAPH, DISJOINT_STARS, DISJOINT_EDGES, DISJOINT_CYCLES}
    with pytest.raises(ValueError):
        classify_minimal_orbit(cycle_graph(5))


def test_group_report_json():
    rep = group_report(petersen())
    assert rep["aut_order"] == "120" and rep["M"] == 15 and rep["pi"] == "8"
    assert rep["edge_transitive"] is True


def test_networkx_agrees_on_isomorphism_classes():
    graphs = enumerate_cubic(10)
    for i, G in enumerate(graphs):
        for H in graphs[i + 1:]:
            assert not nx.is_isomorphic(to_nx(G), to_nx(H))
