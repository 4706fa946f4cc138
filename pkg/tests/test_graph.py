import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, strategies as st

from specgraph.errors import CapacityError, ConnectivityError, ParameterError, ParseError
from specgraph.graph import (
    FamilySpec, Graph, build_named, canonical_form, canonical_graph, complete, complete_bipartite,
    cycle, degree_profile, distance_matrix, distances, empty, enumerate_graphs, from_edge_list,
    from_graph6, friendship, is_isomorphic, joined_union, path, random_graph, star, t4_2a2b,
    to_edge_list, to_graph6,
)


def graphs(max_n=8):
    @st.composite
    def build(draw):
        n = draw(st.integers(1, max_n))
        pairs = list(itertools.combinations(range(n), 2))
        mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
        return Graph.from_edges(n, [e for e, keep in zip(pairs, mask) if keep])
    return build()


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def test_star_degrees():
    assert sorted(build_named(FamilySpec("star", {"n": 4})).degrees(), reverse=True) == [3, 1, 1, 1]


def test_friendship_order_size():
    g = friendship(2)
    assert (g.n, g.m) == (5, 6)
    assert sorted(g.degrees()).count(4) == 1


def test_t4_small_case_is_path():
    assert is_isomorphic(t4_2a2b(1, 1), path(5))


def test_invalid_family_parameters():
    with pytest.raises(ParameterError):
        build_named(FamilySpec("complete_split", {"omega": 5, "n": 3}))
    with pytest.raises(ParameterError):
        build_named(FamilySpec("no_such_family", {}))


def test_join_of_cocliques_is_complete_bipartite():
    g = joined_union(complete(2), [empty(3), empty(4)])
    assert is_isomorphic(g, complete_bipartite(3, 4))


def test_path_skeleton_three_parts():
    g = joined_union(path(3), [complete(1), complete(2), complete(3)])
    assert (g.n, g.m) == (6, 0 + 1 + 3 + 1 * 2 + 2 * 3)


def test_joined_union_order_and_size():
    small = [g for n in range(1, 5) for g in enumerate_graphs(n)]
    for g1, g2 in itertools.product(small, repeat=2):
        h = joined_union(complete(2), [g1, g2])
        assert h.n == g1.n + g2.n
        assert h.m == g1.m + g2.m + g1.n * g2.n


def test_joined_union_keeps_skeleton_diameter():
    parts_pool = [complete(1), complete(2), path(3), cycle(4)]
    for k in range(3, 6):
        for sk in enumerate_graphs(k, connected_only=True):
            if sk.m == k * (k - 1) // 2:
                continue
            parts = [parts_pool[i % len(parts_pool)] for i in range(k)]
            assert distances(joined_union(sk, parts))[2] == distances(sk)[2]


def test_path_distances():
    d, prof, diam = distances(path(3))
    assert d.tolist() == [[0, 1, 2], [1, 0, 1], [2, 1, 0]]
    assert prof.tr == (3, 2, 3) and prof.wiener == 4 and diam == 2


def test_cycle_transmission_regular():
    _, prof, _ = distances(cycle(4))
    assert prof.tr == (4, 4, 4, 4) and prof.regular and prof.wiener == 8


@pytest.mark.parametrize("a,b", [(1, 1), (2, 3), (4, 4), (1, 6)])
def test_complete_bipartite_wiener(a, b):
    w = distances(complete_bipartite(a, b))[1].wiener
    assert w == nx.wiener_index(to_nx(complete_bipartite(a, b)))
    assert w == a * b + a * (a - 1) + b * (b - 1)


def test_disconnected_distance_names_vertices():
    with pytest.raises(ConnectivityError) as err:
        distance_matrix(Graph.from_edges(3, [(0, 1)]))
    assert "2" in str(err.value)


def test_distance_is_metric():
    for n in range(1, 7):
        for g in enumerate_graphs(n, connected_only=True):
            d = distance_matrix(g)
            assert (d == d.T).all() and (np.diag(d) == 0).all()
            for i, j, k in itertools.product(range(n), repeat=3):
                assert d[i, j] <= d[i, k] + d[k, j]


def test_degree_profiles():
    p = degree_profile(star(4))
    assert p.degrees == (3, 1, 1, 1) and p.conjugate == (4, 1, 1, 0) and p.average == 1.5
    q = degree_profile(complete(4))
    assert q.degrees == (3, 3, 3, 3) and q.conjugate == (4, 4, 4, 0)


@given(graphs())
def test_conjugate_degree_sum(g):
    p = degree_profile(g)
    assert sum(p.conjugate) == sum(p.degrees)


@given(graphs(12))
def test_graph6_round_trip_and_networkx_agrees(g):
    code = to_graph6(g)
    assert from_graph6(code) == g
    h = nx.from_graph6_bytes(code.encode())
    assert sorted(tuple(sorted(e)) for e in h.edges()) == sorted(g.edges())


def test_graph6_random_round_trip(rng):
    for _ in range(1000):
        g = random_graph(int(rng.integers(1, 20)), 0.4, rng)
        assert from_graph6(to_graph6(g)) == g


def test_graph6_triangle():
    g = from_graph6(to_graph6(complete(3)))
    assert g.m == 3 and g.n == 3


@pytest.mark.parametrize("bad", ["", "D", "D?{x", "\x7f"])
def test_graph6_parse_errors(bad):
    with pytest.raises(ParseError) as err:
        from_graph6(bad)
    assert err.value.offset >= 0


def test_edge_list_round_trip():
    g = cycle(5)
    assert from_edge_list(to_edge_list(g)) == g


@pytest.mark.parametrize("n,count", [(1, 1), (2, 1), (3, 2), (4, 6), (5, 21), (6, 112), (7, 853)])
def test_connected_graph_counts(n, count):
    assert sum(1 for _ in enumerate_graphs(n, connected_only=True)) == count


def test_all_graph_counts_against_networkx_atlas():
    atlas = nx.graph_atlas_g()
    for n in range(1, 8):
        assert sum(1 for _ in enumerate_graphs(n)) == sum(1 for h in atlas if h.number_of_nodes() == n)


def test_enumeration_capacity():
    with pytest.raises(CapacityError):
        next(iter(enumerate_graphs(9)))


@given(graphs(7), st.randoms())
def test_canonical_form_invariant_under_relabelling(g, r):
    order = list(range(g.n))
    r.shuffle(order)
    h = g.relabel(order)
    assert canonical_form(h)[0] == canonical_form(g)[0]
    assert canonical_graph(h) == canonical_graph(g)


@given(graphs(9), graphs(9), st.randoms())
def test_is_isomorphic_matches_networkx(g, h, r):
    order = list(range(g.n))
    r.shuffle(order)
    assert is_isomorphic(g, g.relabel(order))
    assert is_isomorphic(g, h) == nx.is_isomorphic(to_nx(g), to_nx(h))


def test_is_isomorphic_regular_pairs():
    # same degree sequence: C_6 versus two triangles
    two_triangles = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert not is_isomorphic(cycle(6), two_triangles)
    assert is_isomorphic(complete_bipartite(20, 20), complete_bipartite(20, 20).relabel(list(range(39, -1, -1))))


def test_canonical_form_capacity():
    with pytest.raises(CapacityError):
        canonical_form(complete_bipartite(9, 9))
