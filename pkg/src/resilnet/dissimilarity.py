"""Distance-distribution dissimilarity between graphs.

Each node ``i`` gets a distribution ``p_i(j)``: the fraction of the other
``n - 1`` nodes at hop distance ``j``. Columns ``0 .. bin_cap - 1`` hold
distances ``1 .. bin_cap`` and one extra trailing column collects
unreachable nodes, so rows stay normalised on disconnected graphs.

All logarithms are natural.
"""

from dataclasses import dataclass
import math

import numpy as np

from .exceptions import NotConnectedError, TooFewNodesError
from .graph import distance_matrix
from .utils.validation import check_graph, check_weights

__all__ = [
    "NodeDistanceDistribution",
    "GraphDistanceResult",
    "max_finite_distance",
    "distance_distributions",
    "node_distance_distribution",
    "mean_distance_distribution",
    "distribution_mean",
    "generalized_jsd",
    "network_node_dispersion",
    "jensen_shannon_pair",
    "graph_distance",
    "dissimilarity_matrix",
]

_LOG2 = math.log(2.0)


@dataclass(frozen=True)
class NodeDistanceDistribution:
    owner: object
    probabilities: np.ndarray

    @property
    def reachable(self):
        """Probabilities for distances ``1 .. bin_cap``."""
        return self.probabilities[:-1]

    @property
    def unreachable(self):
        return float(self.probabilities[-1])


@dataclass(frozen=True)
class GraphDistanceResult:
    jsd_term: float
    nnd_term: float
    total: float
    w1: float
    w2: float
    jsd: float
    nnd: tuple


def max_finite_distance(g, distances=None):
    T = distance_matrix(g) if distances is None else distances
    finite = T[np.isfinite(T)]
    return int(finite.max()) if finite.size else 0


def distance_distributions(g, bin_cap=None, distances=None):
    """Matrix of per-node distance distributions, shape ``(n, bin_cap + 1)``."""
    check_graph(g)
    n = g.n_nodes
    if n < 2:
        raise TooFewNodesError("distance distributions need at least 2 nodes")
    T = distance_matrix(g) if distances is None else distances
    d = max_finite_distance(g, T)
    if bin_cap is None:
        bin_cap = d
    elif bin_cap < d:
        raise ValueError(f"bin_cap={bin_cap} is smaller than the largest distance {d}")
    counts = np.zeros((n, bin_cap + 1))
    for i in range(n):
        row = T[i]
        finite = row[np.isfinite(row) & (row > 0)].astype(int)
        counts[i, :bin_cap] = np.bincount(finite - 1, minlength=bin_cap)[:bin_cap]
        counts[i, bin_cap] = np.isinf(row).sum()
    return counts / (n - 1)


def node_distance_distribution(g, node, bin_cap=None):
    i = g.index(node)
    P = distance_distributions(g, bin_cap)
    return NodeDistanceDistribution(owner=node, probabilities=P[i])


def mean_distance_distribution(g, bin_cap=None):
    """Average of the per-node distributions."""
    return distance_distributions(g, bin_cap).mean(axis=0)


def distribution_mean(P):
    """Expected hop distance under ``P`` over its reachable bins."""
    P = np.asarray(P, dtype=float)
    reach = P[:-1]
    mass = reach.sum()
    if mass == 0:
        return math.inf
    return float((np.arange(1, len(reach) + 1) * reach).sum() / mass)


def _kl_terms(P, M):
    mask = P > 0
    return float((P[mask] * np.log(P[mask] / M[mask])).sum())


def generalized_jsd(P, normalized=True):
    """Jensen-Shannon divergence among the rows of ``P``.

    ``normalized=True`` averages over rows (the ``1/n`` factor); ``False``
    returns the plain sum.
    """
    P = np.asarray(P, dtype=float)
    if (P == P[0]).all():
        return 0.0
    mu = P.mean(axis=0)
    # nonnegative in exact arithmetic; drop rounding residue below zero
    total = max(0.0, sum(_kl_terms(row, mu) for row in P))
    return total / len(P) if normalized else total


def network_node_dispersion(g, strict=True, normalized=True, distances=None):
    """Jensen-Shannon divergence among node distance distributions over ``log(d + 1)``.

    ``strict=True`` rejects disconnected graphs. Otherwise unreachable pairs
    fall into the extra bin and ``d`` is the largest finite distance.
    ``normalized=False`` drops the ``1/n`` averaging and may exceed 1.
    """
    check_graph(g, min_nodes=2)
    T = distance_matrix(g) if distances is None else distances
    if strict and np.isinf(T).any():
        raise NotConnectedError("NND needs a connected graph (pass strict=False)")
    d = max_finite_distance(g, T)
    if d == 0:
        return 0.0
    P = distance_distributions(g, d, distances=T)
    return generalized_jsd(P, normalized) / math.log(d + 1)


def jensen_shannon_pair(P, Q, align=True):
    """Two-distribution Jensen-Shannon divergence in nats, in ``[0, log 2]``.

    With ``align=True`` the shorter vector is zero-padded at the end.
    """
    P = np.asarray(P, dtype=float)
    Q = np.asarray(Q, dtype=float)
    if len(P) != len(Q):
        if not align:
            raise ValueError(f"length mismatch: {len(P)} vs {len(Q)}")
        size = max(len(P), len(Q))
        P = np.pad(P, (0, size - len(P)))
        Q = np.pad(Q, (0, size - len(Q)))
    M = (P + Q) / 2.0
    js = 0.5 * (_kl_terms(P, M) + _kl_terms(Q, M))
    return min(max(js, 0.0), _LOG2)


def graph_distance(g, g2, w1=0.5, w2=None, normalized=True):
    """Dissimilarity ``D`` between two graphs.

    ``D = w1 * sqrt(JS(P(G), P(G')) / log 2) + w2 * |sqrt(NND(G)) - sqrt(NND(G'))|``

    Both mean distance distributions are built over the common range
    ``1 .. max(d, d')`` plus the unreachable bin.
    """
    w1, w2 = check_weights(w1, w2)
    check_graph(g, min_nodes=2)
    check_graph(g2, min_nodes=2)
    T1, T2 = distance_matrix(g), distance_matrix(g2)
    cap = max(max_finite_distance(g, T1), max_finite_distance(g2, T2))
    P1 = distance_distributions(g, cap, distances=T1).mean(axis=0)
    P2 = distance_distributions(g2, cap, distances=T2).mean(axis=0)
    js = jensen_shannon_pair(P1, P2, align=False)
    nnd1 = network_node_dispersion(g, strict=False, normalized=normalized, distances=T1)
    nnd2 = network_node_dispersion(g2, strict=False, normalized=normalized, distances=T2)
    jsd_term = w1 * math.sqrt(js / _LOG2)
    nnd_term = w2 * abs(math.sqrt(nnd1) - math.sqrt(nnd2))
    return GraphDistanceResult(
        jsd_term=jsd_term,
        nnd_term=nnd_term,
        total=jsd_term + nnd_term,
        w1=w1,
        w2=w2,
        jsd=js,
        nnd=(nnd1, nnd2),
    )


def dissimilarity_matrix(graphs, w1=0.5, w2=None, normalized=True):
    """Symmetric matrix of pairwise :func:`graph_distance` totals."""
    graphs = list(graphs)
    if len(graphs) < 2:
        raise ValueError("need at least two graphs")
    k = len(graphs)
    D = np.zeros((k, k))
    for a in range(k):
        for b in range(a + 1, k):
            D[a, b] = D[b, a] = graph_distance(graphs[a], graphs[b], w1, w2, normalized).total
    return D
