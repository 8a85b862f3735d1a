import math

from hypothesis import given, settings, strategies as st
import numpy as np
import pytest

from resilnet.exceptions import (
    DuplicateEdgeError,
    GraphError,
    NegativeWeightError,
    NoConnectedPairError,
    SelfLoopError,
    UnknownEdgeError,
    UnknownNodeError,
)
from resilnet.graph import (
    adjacency_matrix,
    build_graph,
    characteristic_path_length,
    component_diameters,
    connected_components,
    degree,
    degrees,
    diameter,
    distance_matrix,
    eccentricity,
    laplacian_matrix,
    single_source_distances,
)

from oracles import bfs_distances, complete, make, path, random_graph, star, two_triangles, union_find_count

K3 = complete(3)
P3 = make([("a", "b"), ("b", "c")])


def test_build_triangle():
    g = build_graph(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")])
    assert (g.n_nodes, g.n_edges) == (3, 3)
    assert g.node_ids == ("a", "b", "c")
    assert g.has_edge("c", "a") and not g.is_weighted


@pytest.mark.parametrize("nodes, edges, weights, exc", [
    (["a"], [("a", "a")], None, SelfLoopError),
    (["a", "b"], [("a", "b"), ("b", "a")], None, DuplicateEdgeError),
    (["a", "b"], [("a", "z")], None, UnknownNodeError),
    (["a", "b"], [("a", "b")], [-1.0], NegativeWeightError),
    (["a", "b"], [("a", "b")], [math.nan], GraphError),
    (["a", "a"], [], None, GraphError),
])
def test_build_rejects(nodes, edges, weights, exc):
    with pytest.raises(exc):
        build_graph(nodes, edges, weights)


def test_weights_as_mapping():
    g = build_graph(["a", "b", "c"], [("a", "b"), ("b", "c")], {("b", "a"): 2.5, ("b", "c"): 1.0})
    A = adjacency_matrix(g, weighted=True)
    assert A[0, 1] == A[1, 0] == 2.5
    assert degree(g, "b", weighted=True) == 3.5


def test_degrees():
    assert [degree(K3, v) for v in K3.node_ids] == [2, 2, 2]
    s = star(3)
    assert degree(s, "c") == 3 and degree(s, "l0") == 1
    assert degree(P3, "b") == 2
    with pytest.raises(UnknownNodeError):
        degree(P3, "zz")


def test_adjacency_and_laplacian_small():
    A = adjacency_matrix(P3)
    assert A[0, 1] == A[1, 2] == 1 and A[0, 2] == 0
    np.testing.assert_array_equal(adjacency_matrix(K3), np.ones((3, 3)) - np.eye(3))
    np.testing.assert_array_equal(laplacian_matrix(K3), 3 * np.eye(3) - np.ones((3, 3)))
    L = laplacian_matrix(P3)
    np.testing.assert_array_equal(np.diag(L), [1, 2, 1])
    assert L[0, 1] == L[1, 2] == -1


def test_single_source():
    np.testing.assert_array_equal(single_source_distances(P3, "a"), [0, 1, 2])
    np.testing.assert_array_equal(single_source_distances(K3, "1"), [1, 0, 1])
    g = make([("a", "b"), ("c", "d")])
    row = single_source_distances(g, "a")
    assert row[1] == 1 and np.isinf(row[2:]).all()
    with pytest.raises(UnknownNodeError):
        single_source_distances(g, "q")


def test_weighted_distances_use_dijkstra():
    g = build_graph(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")], [1.0, 1.0, 5.0])
    assert single_source_distances(g, "a", weighted=True)[2] == 2.0
    assert single_source_distances(g, "a")[2] == 1.0


def test_distance_matrix_examples():
    T = distance_matrix(star(3))
    assert T[0, 1] == 1 and T[1, 2] == 2
    assert distance_matrix(P3).max() == 2
    assert distance_matrix(K3)[0, 1] == 1


def test_components_examples():
    assert connected_components(K3).component_count == 1
    c = connected_components(two_triangles())
    assert c.component_count == 2 and c.component_sizes == (3, 3)
    assert connected_components(build_graph(list("abcd"), [])).component_count == 4


def test_diameter_cpl_eccentricity():
    assert diameter(P3) == 2 and diameter(K3) == 1
    assert characteristic_path_length(K3) == 1.0
    assert characteristic_path_length(P3) == pytest.approx(4 / 3)
    assert eccentricity(P3, "a") == 2 and eccentricity(P3, "b") == 1
    assert eccentricity(K3, "0") == 1 and eccentricity(star(3), "c") == 1


def test_disconnected_diameter_and_cpl():
    g = make([("a", "b"), ("b", "c"), ("x", "y")])
    assert math.isinf(diameter(g))
    assert component_diameters(g) == [2.0, 1.0]
    assert characteristic_path_length(g) == pytest.approx((1 + 1 + 2 + 1) / 4)
    with pytest.raises(NoConnectedPairError):
        characteristic_path_length(build_graph(["a", "b"], []))


def test_without_edges_and_subgraph():
    g = path(4)
    h = g.without_edges([("2", "1")])
    assert h.n_edges == 2 and connected_components(h).component_count == 2
    with pytest.raises(UnknownEdgeError):
        g.without_edges([("0", "3")])
    s = g.subgraph(["1", "2", "3"])
    assert s.node_ids == ("1", "2", "3") and s.n_edges == 2


def test_random_invariants(rng):
    for _ in range(100):
        n = int(rng.integers(1, 31))
        g = random_graph(rng, n, float(rng.uniform(0.02, 0.4)))
        T = distance_matrix(g)
        np.testing.assert_array_equal(T, T.T)
        assert (np.diag(T) == 0).all()
        np.testing.assert_array_equal(T, bfs_distances(g))
        assert 2 * g.n_edges == degrees(g).sum()
        A = adjacency_matrix(g)
        np.testing.assert_array_equal(A.sum(axis=1), degrees(g))
        np.testing.assert_array_equal(laplacian_matrix(g).sum(axis=1), 0)
        count = union_find_count(n, g.edge_indices)
        assert connected_components(g).component_count == count


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 11), st.integers(0, 11)), max_size=40))
def test_components_match_union_find(pairs):
    edges = sorted({(min(a, b), max(a, b)) for a, b in pairs if a != b})
    nodes = [str(i) for i in range(12)]
    g = build_graph(nodes, [(str(a), str(b)) for a, b in edges])
    lab = connected_components(g)
    assert lab.component_count == union_find_count(12, edges)
    for a, b in edges:
        assert lab.labels[a] == lab.labels[b]
