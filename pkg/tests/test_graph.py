import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ptfree.errors import CapacityError, GraphInputError
from ptfree.graph import (
    Graph,
    all_pairs_distances,
    bfs_distances,
    broom,
    claw,
    complete_graph,
    connected_components,
    contains_induced,
    contains_induced_path,
    cycle_graph,
    delete_vertices,
    disjoint_union,
    empty_graph,
    find_induced,
    find_induced_path,
    girth,
    induced_subgraph,
    is_connected,
    is_independent,
    is_scattered,
    line_graph,
    path_graph,
    petersen_graph,
    star_graph,
)

from conftest import graphs


def test_duplicate_and_reversed_edges_collapse():
    g = Graph(3, [(0, 1), (1, 0), (0, 1), (2, 1)])
    assert g.edges == ((0, 1), (1, 2))
    assert g.m == 2


@pytest.mark.parametrize("edges", [[(0, 0)], [(0, 3)], [(-1, 1)]])
def test_bad_edges_rejected(edges):
    with pytest.raises(GraphInputError):
        Graph(3, edges)


def test_negative_vertex_count_rejected():
    with pytest.raises(GraphInputError):
        Graph(-1)


@given(graphs())
def test_adjacency_is_symmetric_and_loop_free(g):
    for u in range(g.n):
        assert u not in g.neighbors(u)
        for v in g.neighbors(u):
            assert g.has_edge(v, u)


def test_graph_equality_and_hash():
    assert Graph(3, [(0, 1)]) == Graph(3, [(1, 0)])
    assert len({Graph(3, [(0, 1)]), Graph(3, [(1, 0)])}) == 1
    assert Graph(3, [(0, 1)]) != Graph(4, [(0, 1)])


def test_components_examples():
    assert connected_components(empty_graph(0)) == []
    assert connected_components(Graph(4, [(0, 1), (2, 3)])) == [{0, 1}, {2, 3}]
    assert connected_components(cycle_graph(5)) == [frozenset(range(5))]
    assert not is_connected(empty_graph(0))


def test_bfs_examples():
    assert bfs_distances(path_graph(3), 0) == [0, 1, 2]
    assert bfs_distances(complete_graph(4), 0) == [0, 1, 1, 1]
    assert bfs_distances(Graph(4, [(0, 1), (2, 3)]), 0) == [0, 1, None, None]
    with pytest.raises(GraphInputError):
        bfs_distances(path_graph(3), 3)


@given(graphs(max_n=9))
def test_bfs_triangle_inequality(g):
    dist = all_pairs_distances(g)
    for x, y, z in itertools.product(range(g.n), repeat=3):
        if dist[x][y] is not None and dist[y][z] is not None:
            assert dist[x][z] is not None and dist[x][z] <= dist[x][y] + dist[y][z]


def test_induced_subgraph_examples():
    c5 = cycle_graph(5)
    assert induced_subgraph(c5, range(5))[0] == c5
    k3, labels = induced_subgraph(complete_graph(4), [0, 2, 3])
    assert k3 == complete_graph(3) and labels == (0, 2, 3)
    two, _ = induced_subgraph(path_graph(5), [0, 4])
    assert two == empty_graph(2)
    with pytest.raises(GraphInputError):
        induced_subgraph(c5, [7])


@given(graphs(), st.data())
def test_induced_subgraph_keeps_exactly_inner_edges(g, data):
    s = data.draw(st.sets(st.integers(0, max(g.n - 1, 0)), max_size=g.n)) if g.n else set()
    sub, labels = induced_subgraph(g, s)
    assert sub.m == sum(1 for u, v in g.edges if u in s and v in s)
    for i, j in sub.edges:
        assert g.has_edge(labels[i], labels[j])


def test_delete_vertices_maps_back():
    g, labels = delete_vertices(path_graph(4), [1])
    assert labels == (0, 2, 3) and g.edges == ((1, 2),)


def test_independence_and_scattered_predicates():
    p = path_graph(7)
    assert is_independent(p, [0, 2, 4])
    assert not is_independent(p, [0, 1])
    assert is_scattered(p, [0, 3, 6], 3)
    assert not is_scattered(p, [0, 2], 3)
    assert is_scattered(Graph(2), [0, 1], 100)  # different components


def test_girth_values():
    assert girth(path_graph(6)) is None
    assert girth(complete_graph(4)) == 3
    assert girth(cycle_graph(7)) == 7
    assert girth(petersen_graph()) == 5


@given(graphs(max_n=8))
def test_girth_matches_shortest_induced_cycle(g):
    # the shortest cycle is always induced
    best = None
    for k in range(3, g.n + 1):
        if contains_induced(g, cycle_graph(k)):
            best = k
            break
    assert girth(g) == best


def test_induced_path_examples():
    assert contains_induced_path(path_graph(5), 5)
    assert not contains_induced_path(cycle_graph(5), 5)
    assert contains_induced_path(cycle_graph(5), 4)
    assert not contains_induced_path(complete_graph(6), 3)


def test_induced_path_from_start():
    assert find_induced_path(path_graph(5), 5, start=0) == [0, 1, 2, 3, 4]
    assert find_induced_path(path_graph(5), 5, start=2) is None


@given(graphs(max_n=9), st.integers(1, 6))
def test_two_path_detectors_agree(g, t):
    assert contains_induced_path(g, t) == contains_induced(g, path_graph(t))


@given(graphs(max_n=9), st.integers(1, 5))
def test_found_path_is_induced(g, t):
    path = find_induced_path(g, t)
    if path is not None:
        assert len(set(path)) == t
        for i, j in itertools.combinations(range(t), 2):
            assert g.has_edge(path[i], path[j]) == (j == i + 1)


def test_find_induced_examples():
    assert find_induced(star_graph(3), claw()) == [0, 1, 2, 3]
    assert not contains_induced(complete_graph(4), claw())
    with pytest.raises(CapacityError):
        find_induced(path_graph(20), path_graph(13))


@given(graphs(max_n=7))
def test_line_graphs_are_claw_free(g):
    lg, edge_of = line_graph(g)
    assert not contains_induced(lg, claw())
    for i, j in lg.edges:
        assert set(edge_of[i]) & set(edge_of[j])


@given(graphs(min_n=1, max_n=7), graphs(min_n=1, max_n=4))
def test_find_induced_embedding_is_faithful(g, h):
    phi = find_induced(g, h)
    if phi is not None:
        assert len(set(phi)) == h.n
        for x, y in itertools.combinations(range(h.n), 2):
            assert g.has_edge(phi[x], phi[y]) == h.has_edge(x, y)


def test_broom_shapes():
    fork = broom(2, 3)
    assert fork.n == 5 and sorted(fork.degree(v) for v in range(5)) == [1, 1, 1, 2, 3]
    assert broom(2, 2) == Graph(4, [(0, 1), (1, 2), (1, 3)])  # K_{1,3}
    assert sorted(broom(3, 4).degree(v) for v in range(7)) == [1, 1, 1, 1, 2, 2, 4]
    with pytest.raises(GraphInputError):
        broom(1, 3)


@pytest.mark.parametrize("d,t", [(2, 2), (2, 3), (3, 4), (4, 2), (2, 6)])
def test_broom_path_lengths(d, t):
    b = broom(d, t)
    assert is_connected(b) and b.n == t + d and b.m == t + d - 1
    assert contains_induced_path(b, t + 1)
    assert not contains_induced_path(b, t + 2)


def test_disjoint_union_offsets():
    g = disjoint_union(path_graph(2), path_graph(3))
    assert g.n == 5 and g.edges == ((0, 1), (2, 3), (3, 4))


def test_random_graph_components_partition_vertices():
    rng = random.Random(0)
    for _ in range(50):
        n = rng.randint(0, 15)
        g = Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.15])
        comps = connected_components(g)
        assert sorted(v for c in comps for v in c) == list(range(n))
        for c in comps:
            assert is_connected(induced_subgraph(g, c)[0])
