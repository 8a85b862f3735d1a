import math

import numpy as np
import pytest

from resilnet.exceptions import BadWeightsError, NotConnectedError, UnknownNodeError
from resilnet.dissimilarity import (
    dissimilarity_matrix,
    distance_distributions,
    distribution_mean,
    generalized_jsd,
    graph_distance,
    jensen_shannon_pair,
    mean_distance_distribution,
    network_node_dispersion,
    node_distance_distribution,
)

from oracles import complete, cycle, make, nnd_oracle, pair_js, path, random_graph, star, two_triangles

S4 = star(3)
# hand evaluation for the 3-leaf star: centre row (1, 0), leaf rows (1/3, 2/3), mean (1/2, 1/2)
S4_NND = (math.log(2) + 3 * (math.log(2 / 3) / 3 + 2 * math.log(4 / 3) / 3)) / 4 / math.log(3)


def test_node_distributions():
    assert node_distance_distribution(S4, "c").reachable.tolist() == [1.0, 0.0]
    np.testing.assert_allclose(node_distance_distribution(S4, "l0").reachable, [1 / 3, 2 / 3])
    d = node_distance_distribution(make([("a", "b"), ("b", "c"), ("x", "y")]), "a")
    assert d.unreachable > 0 and d.probabilities.sum() == pytest.approx(1.0)
    with pytest.raises(UnknownNodeError):
        node_distance_distribution(S4, "nope")
    with pytest.raises(ValueError):
        distance_distributions(path(5), bin_cap=2)


def test_distributions_sum_to_one(rng):
    for _ in range(40):
        g = random_graph(rng, int(rng.integers(2, 30)), float(rng.uniform(0.02, 0.4)))
        P = distance_distributions(g)
        np.testing.assert_allclose(P.sum(axis=1), 1.0, atol=1e-12)


def test_mean_distribution():
    np.testing.assert_allclose(mean_distance_distribution(S4)[:2], [0.5, 0.5])
    np.testing.assert_allclose(mean_distance_distribution(complete(3))[:1], [1.0])
    np.testing.assert_allclose(mean_distance_distribution(path(3))[:2], [2 / 3, 1 / 3])
    assert distribution_mean(mean_distance_distribution(S4)) == pytest.approx(1.5)


def test_nnd_examples():
    assert S4_NND == pytest.approx(0.19639, abs=1e-5)
    assert network_node_dispersion(S4) == pytest.approx(S4_NND, abs=1e-14)
    for n in (3, 5, 8):
        assert network_node_dispersion(complete(n)) == 0.0
    for n in (4, 7, 10):
        assert network_node_dispersion(cycle(n)) == 0.0
    with pytest.raises(NotConnectedError):
        network_node_dispersion(two_triangles())
    assert network_node_dispersion(two_triangles(), strict=False) == 0.0


def test_nnd_matches_definition(rng):
    for _ in range(30):
        g = random_graph(rng, int(rng.integers(3, 20)), 0.2, connected=bool(rng.integers(2)))
        for normalized in (True, False):
            ref = nnd_oracle(g, normalized)
            got = network_node_dispersion(g, strict=False, normalized=normalized)
            assert got == pytest.approx(ref, rel=1e-12, abs=1e-15)
        assert 0.0 <= network_node_dispersion(g, strict=False) <= 1.0


def test_unnormalized_is_n_times_larger():
    n = S4.n_nodes
    assert network_node_dispersion(S4, normalized=False) == pytest.approx(n * S4_NND)


def test_generalized_jsd_identical_rows():
    assert generalized_jsd(np.tile([0.2, 0.8], (5, 1))) == 0.0


def test_pair_js():
    assert jensen_shannon_pair([0.3, 0.7], [0.3, 0.7]) == 0.0
    assert jensen_shannon_pair([1, 0], [0, 1]) == pytest.approx(math.log(2))
    ref = pair_js([0.5, 0.5], [1.0, 0.0])
    assert ref == pytest.approx(0.5 * (0.5 * math.log(2 / 3) + 0.5 * math.log(2)
                                       + math.log(4 / 3)))
    assert jensen_shannon_pair([0.5, 0.5], [1.0, 0.0]) == pytest.approx(ref, abs=1e-15)
    assert jensen_shannon_pair([1.0], [0.5, 0.5]) == pytest.approx(ref, abs=1e-15)
    with pytest.raises(ValueError):
        jensen_shannon_pair([1.0], [0.5, 0.5], align=False)


def test_graph_distance_k3_c6():
    k3, c6 = complete(3), cycle(6)
    # K3 mean distribution over bins 1..3 + unreachable: (1, 0, 0, 0)
    # C6: each node sees 2 at distance 1, 2 at 2, 1 at 3 -> (2/5, 2/5, 1/5, 0)
    js = pair_js([1, 0, 0, 0], [0.4, 0.4, 0.2, 0])
    expected = 0.5 * math.sqrt(js / math.log(2)) + 0.5 * abs(0.0 - 0.0)
    r = graph_distance(k3, c6)
    assert r.jsd == pytest.approx(js, abs=1e-15)
    assert r.nnd == (0.0, 0.0)
    assert r.total == pytest.approx(expected, abs=1e-14)


def test_graph_distance_nnd_term():
    r = graph_distance(S4, complete(4), w1=0.3)
    assert r.w2 == pytest.approx(0.7)
    assert r.nnd_term == pytest.approx(0.7 * math.sqrt(S4_NND), abs=1e-14)
    assert 0 <= r.total <= 1


def test_complete_graphs_indistinguishable():
    assert graph_distance(complete(3), complete(7)).total == 0.0


def test_bad_weights():
    with pytest.raises(BadWeightsError):
        graph_distance(S4, S4, w1=0.6, w2=0.6)
    with pytest.raises(BadWeightsError):
        graph_distance(S4, S4, w1=1.5)


def test_identity_and_symmetry(rng):
    for _ in range(25):
        g = random_graph(rng, int(rng.integers(3, 25)), 0.2, connected=True)
        h = random_graph(rng, int(rng.integers(3, 25)), 0.2, connected=bool(rng.integers(2)))
        assert graph_distance(g, g).total <= 1e-12
        assert abs(graph_distance(g, h).total - graph_distance(h, g).total) <= 1e-12
        assert 0 <= graph_distance(g, h).total <= 1


def test_matrix():
    D = dissimilarity_matrix([complete(3), path(3), S4])
    assert D.shape == (3, 3)
    np.testing.assert_array_equal(D, D.T)
    assert (np.diag(D) == 0).all() and (D[np.triu_indices(3, 1)] > 0).all()
    np.testing.assert_array_equal(dissimilarity_matrix([S4, S4]), np.zeros((2, 2)))
    with pytest.raises(ValueError):
        dissimilarity_matrix([S4])
