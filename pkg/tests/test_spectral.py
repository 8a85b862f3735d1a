import math

import numpy as np
import pytest

from resilnet.exceptions import NotConnectedError, NotSymmetricError
from resilnet.graph import build_graph, connected_components, laplacian_matrix, adjacency_matrix
from resilnet.spectral import (
    adjacency_spectrum,
    algebraic_connectivity,
    fiedler_vector,
    laplacian_spectrum,
    sign_normalize,
    spectral_gap,
    spectral_summary,
    symmetric_eigen,
    zero_multiplicity,
)

from oracles import barbell, complete, make, path, random_graph, two_triangles, union_find_count


def test_small_spectra():
    np.testing.assert_allclose(laplacian_spectrum(complete(3)), [0, 3, 3], atol=1e-12)
    np.testing.assert_allclose(laplacian_spectrum(path(3)), [0, 1, 3], atol=1e-12)
    for n in (5, 10):
        ref = sorted(2 * (1 - math.cos(k * math.pi / n)) for k in range(n))
        np.testing.assert_allclose(laplacian_spectrum(path(n)), ref, atol=1e-12)


@pytest.mark.parametrize("method", ["lapack", "jacobi"])
def test_complete_graph_spectrum(method):
    for n in (3, 4, 5):
        w = laplacian_spectrum(complete(n), method=method)
        np.testing.assert_allclose(w, [0] + [n] * (n - 1), atol=1e-10)


def test_path_algebraic_connectivity():
    for n in range(3, 21):
        assert algebraic_connectivity(path(n)) == pytest.approx(2 * (1 - math.cos(math.pi / n)),
                                                                abs=1e-9)


def test_gap_and_connectivity_examples():
    assert algebraic_connectivity(complete(3)) == pytest.approx(3)
    assert algebraic_connectivity(two_triangles()) == 0.0
    assert spectral_gap(complete(3)) == pytest.approx(0, abs=1e-12)
    assert spectral_gap(path(3)) == pytest.approx(2)
    # adjacency of P3 is {-sqrt2, 0, sqrt2}
    assert spectral_gap(path(3), kind="adjacency") == pytest.approx(math.sqrt(2))
    with pytest.raises(ValueError):
        spectral_gap(path(3), kind="bogus")


def test_zero_multiplicity_examples():
    assert zero_multiplicity(two_triangles()) == 2
    assert zero_multiplicity(build_graph(list("abcd"), [])) == 4
    assert zero_multiplicity(complete(4)) == 1


def test_fiedler():
    v = fiedler_vector(path(3))
    np.testing.assert_allclose(v, [1 / math.sqrt(2), 0, -1 / math.sqrt(2)], atol=1e-12)
    v = fiedler_vector(make([("a", "b")]))
    np.testing.assert_allclose(v, [1 / math.sqrt(2), -1 / math.sqrt(2)], atol=1e-12)
    v = fiedler_vector(barbell(3))
    assert len(set(np.sign(v[:3]))) == 1 and np.sign(v[0]) == -np.sign(v[3])
    with pytest.raises(NotConnectedError):
        fiedler_vector(two_triangles())


def test_sign_convention():
    V = sign_normalize(np.array([[0.0, -1.0], [-2.0, 1.0]]))
    np.testing.assert_array_equal(V, [[0, 1], [2, -1]])
    V = sign_normalize(np.array([[1e-14], [-1.0]]))
    assert V[1, 0] == 1.0


def test_not_symmetric():
    with pytest.raises(NotSymmetricError):
        symmetric_eigen(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(NotSymmetricError):
        symmetric_eigen(np.zeros((2, 3)))


def _check_decomposition(M, w, V):
    scale = max(1.0, np.abs(M).sum(axis=1).max())
    assert np.abs(M @ V - V * w).max() <= 1e-8 * scale
    assert np.abs(V.T @ V - np.eye(len(w))).max() <= 1e-8
    assert (np.diff(w) >= -1e-12).all()


def test_residuals_random(rng):
    for _ in range(100):
        n = int(rng.integers(2, 201))
        g = random_graph(rng, n, float(rng.uniform(0.5, 6)) / n)
        for M in (laplacian_matrix(g), adjacency_matrix(g)):
            w, V = symmetric_eigen(M)
            _check_decomposition(M, w, V)
        lam = laplacian_spectrum(g)
        assert lam.sum() == pytest.approx(2 * g.n_edges, rel=1e-8, abs=1e-8)


def test_jacobi_agrees_with_lapack(rng):
    for _ in range(15):
        n = int(rng.integers(2, 25))
        g = random_graph(rng, n, 0.3)
        M = laplacian_matrix(g)
        wj, Vj = symmetric_eigen(M, method="jacobi")
        wl, _ = symmetric_eigen(M)
        np.testing.assert_allclose(wj, wl, atol=1e-9)
        _check_decomposition(M, wj, Vj)


def test_deterministic(rng):
    g = random_graph(rng, 40, 0.1)
    a = symmetric_eigen(laplacian_matrix(g))
    b = symmetric_eigen(laplacian_matrix(g))
    assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])


def test_zero_multiplicity_matches_union_find(rng):
    for _ in range(100):
        n = int(rng.integers(2, 51))
        g = random_graph(rng, n, float(rng.uniform(0.2, 3)) / n)
        assert zero_multiplicity(g) == union_find_count(n, g.edge_indices)
        assert zero_multiplicity(g) == connected_components(g).component_count


def test_summary():
    s = spectral_summary(path(4))
    assert s.is_connected and s.zero_multiplicity == 1
    assert s.spectral_radius == pytest.approx(adjacency_spectrum(path(4))[0])
    assert (np.diff(s.adjacency_eigenvalues) <= 1e-12).all()
    d = spectral_summary(two_triangles())
    assert not d.is_connected and d.fiedler_vector is None and d.algebraic_connectivity == 0.0
