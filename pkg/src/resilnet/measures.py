"""Structural measures: density, degree ratios, clustering, centralities.

Betweenness follows the ``1/n**2`` normalisation over ordered source/target
pairs, with each pair contributing the fraction of its shortest paths that
pass through a node (or edge).
"""

from collections import deque
from dataclasses import asdict, dataclass, field
import math
import warnings

import numpy as np

from .exceptions import NoConvergenceError, NotConnectedError, TooFewNodesError
from .graph import (
    adjacency_matrix,
    characteristic_path_length,
    connected_components,
    degrees,
    diameter,
    distance_matrix,
)
from .utils.validation import check_graph

__all__ = [
    "MeasureReport",
    "CentralityReport",
    "density",
    "link_per_node_ratio",
    "mean_degree",
    "triangle_and_triple_counts",
    "clustering_coefficient",
    "average_clustering",
    "closeness_centrality",
    "betweenness_centrality",
    "edge_betweenness",
    "eigenvector_centrality",
    "central_point_dominance",
    "measure_report",
    "centrality_report",
]


def density(g):
    """Fraction of the ``n(n-1)/2`` possible edges that are present."""
    check_graph(g)
    n = g.n_nodes
    if n < 2:
        raise TooFewNodesError("density needs at least 2 nodes")
    return 2.0 * g.n_edges / (n * (n - 1))


def link_per_node_ratio(g):
    check_graph(g, min_nodes=1)
    return g.n_edges / g.n_nodes


def mean_degree(g):
    check_graph(g, min_nodes=1)
    return 2.0 * g.n_edges / g.n_nodes


def triangle_and_triple_counts(g):
    """Return ``(N_triangles, N_triples)``.

    A triple is a path of length two centred on some node, so a node of
    degree ``k`` contributes ``k(k-1)/2`` triples.
    """
    adj = [set(a) for a in g._adj]
    closed = 0
    for i, j in g.edge_indices:
        closed += len(adj[i] & adj[j])
    k = np.array([len(a) for a in adj])
    triples = int((k * (k - 1) // 2).sum())
    return closed // 3, triples


def clustering_coefficient(g):
    """Global clustering ``3 * N_triangles / N_triples`` (0 when there are no triples)."""
    check_graph(g)
    tri, triples = triangle_and_triple_counts(g)
    return 3.0 * tri / triples if triples else 0.0


def average_clustering(g):
    """Mean of per-node local clustering; nodes of degree < 2 count as 0.

    This is the variant reported by Cytoscape's NetworkAnalyzer.
    """
    check_graph(g, min_nodes=1)
    adj = [set(a) for a in g._adj]
    local = np.zeros(g.n_nodes)
    for v, nb in enumerate(adj):
        k = len(nb)
        if k < 2:
            continue
        links = sum(len(adj[u] & nb) for u in nb) / 2
        local[v] = links / (k * (k - 1) / 2)
    return float(local.mean())


def closeness_centrality(g, node=None, strict=True):
    """``C_i = n / sum_j t_ij`` using hop distances.

    With ``strict=False`` a node that cannot reach everyone gets the value
    computed inside its own component (``n_c / sum``). Returns one value when
    ``node`` is given, otherwise an array over all nodes.
    """
    check_graph(g, min_nodes=1)
    T = distance_matrix(g)
    n = g.n_nodes

    def value(i):
        row = T[i]
        finite = np.isfinite(row)
        if not finite.all():
            if strict:
                raise NotConnectedError(
                    f"node {g.node_ids[i]!r} cannot reach every other node")
            total = row[finite].sum()
            return float(finite.sum() / total) if total > 0 else 0.0
        total = row.sum()
        return float(n / total) if total > 0 else 0.0

    if node is not None:
        return value(g.index(node))
    return np.array([value(i) for i in range(n)])


def _brandes(g, endpoints=True):
    """Unnormalised node and edge betweenness over ordered pairs."""
    n = g.n_nodes
    adj = g._adj
    node_b = np.zeros(n)
    edge_b = {e: 0.0 for e in g.edge_indices}
    for s in range(n):
        order = []
        preds = [[] for _ in range(n)]
        sigma = np.zeros(n)
        sigma[s] = 1.0
        dist = np.full(n, -1, dtype=int)
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            order.append(v)
            for w in adj[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = np.zeros(n)
        for w in reversed(order):
            coeff = (1.0 + delta[w]) / sigma[w]
            for v in preds[w]:
                c = sigma[v] * coeff
                edge_b[(v, w) if v < w else (w, v)] += c
                delta[v] += c
            if w != s:
                node_b[w] += delta[w]
        if endpoints:
            reached = len(order) - 1
            node_b[s] += reached
            for t in order[1:]:
                node_b[t] += 1.0
    return node_b, edge_b


def betweenness_centrality(g, endpoints=True):
    """Node betweenness ``b_i = (1/n^2) sum_{s != t} sigma_st(i) / sigma_st``.

    ``endpoints=True`` counts ``s`` and ``t`` as lying on their own paths.
    Returns an array aligned with ``g.node_ids``.
    """
    check_graph(g)
    n = g.n_nodes
    if n == 0:
        return np.zeros(0)
    node_b, _ = _brandes(g, endpoints=endpoints)
    return node_b / n**2


def edge_betweenness(g):
    """Edge betweenness with the same ``1/n^2`` ordered-pair normalisation.

    Returns a dict keyed by node-id pairs as they appear in ``g.edges``.
    """
    check_graph(g)
    n = g.n_nodes
    if n == 0:
        return {}
    _, eb = _brandes(g, endpoints=False)
    ids = g.node_ids
    return {(ids[i], ids[j]): eb[(i, j)] / n**2 for i, j in g.edge_indices}


def eigenvector_centrality(g, tol=1e-10, max_iter=10_000):
    """Dominant adjacency eigenvector by power iteration.

    Iterates on ``A + I``: same eigenvectors, but the shift keeps the
    dominant eigenvalue strictly largest in modulus on bipartite graphs,
    where plain power iteration oscillates. Starts from the uniform vector.

    Returns ``(x, phi1)`` with ``x >= 0`` and ``||x||_2 = 1``. On a
    disconnected graph the vector is computed on the largest component
    (lowest label wins ties) and is zero elsewhere.
    """
    check_graph(g, min_nodes=1)
    comp = connected_components(g)
    if comp.component_count > 1:
        big = int(np.argmax(comp.component_sizes))
        warnings.warn(
            "graph is disconnected; eigenvector centrality computed on the "
            "largest component", RuntimeWarning, stacklevel=2)
        members = comp.members(big)
    else:
        members = np.arange(g.n_nodes)

    A = adjacency_matrix(g)[np.ix_(members, members)]
    m = len(members)
    x = np.full(m, 1.0 / math.sqrt(m))
    shifted = A + np.eye(m)
    for _ in range(max_iter):
        y = shifted @ x
        y /= np.linalg.norm(y)
        Ay = A @ y
        phi = float(y @ Ay)
        if np.abs(Ay - phi * y).max() <= tol:
            break
        x = y
    else:
        raise NoConvergenceError(
            f"eigenvector centrality did not converge in {max_iter} iterations")
    out = np.zeros(g.n_nodes)
    out[members] = np.abs(y)
    return out, phi


def central_point_dominance(g, betweenness=None):
    """``(1/(n-1)) * sum_i (b_max - b_i)``."""
    check_graph(g, min_nodes=2)
    b = betweenness_centrality(g) if betweenness is None else np.asarray(betweenness)
    return float((b.max() - b).sum() / (g.n_nodes - 1))


@dataclass(frozen=True)
class MeasureReport:
    """Scalar structural summary of a graph."""

    n_nodes: int
    n_edges: int
    density: float
    link_per_node_ratio: float
    mean_degree: float
    central_point_dominance: float
    clustering_coefficient: float
    diameter: float
    characteristic_path_length: float

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class CentralityReport:
    degree: dict
    closeness: dict
    betweenness: dict
    eigenvector: dict
    edge_betweenness: dict
    spectral_radius: float
    b_max: float = field(default=0.0)


def measure_report(g, weighted=False):
    """Bundle the scalar measures; ``weighted`` applies to diameter and path length only."""
    check_graph(g, min_nodes=2)
    T = distance_matrix(g, weighted=weighted)
    return MeasureReport(
        n_nodes=g.n_nodes,
        n_edges=g.n_edges,
        density=density(g),
        link_per_node_ratio=link_per_node_ratio(g),
        mean_degree=mean_degree(g),
        central_point_dominance=central_point_dominance(g),
        clustering_coefficient=clustering_coefficient(g),
        diameter=diameter(g, distances=T),
        characteristic_path_length=characteristic_path_length(g, distances=T),
    )


def centrality_report(g):
    check_graph(g, min_nodes=1)
    ids = g.node_ids
    b = betweenness_centrality(g)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        x, phi1 = eigenvector_centrality(g)
    return CentralityReport(
        degree=dict(zip(ids, degrees(g).astype(int).tolist())),
        closeness=dict(zip(ids, closeness_centrality(g, strict=False).tolist())),
        betweenness=dict(zip(ids, b.tolist())),
        eigenvector=dict(zip(ids, x.tolist())),
        edge_betweenness=edge_betweenness(g),
        spectral_radius=phi1,
        b_max=float(b.max()),
    )
