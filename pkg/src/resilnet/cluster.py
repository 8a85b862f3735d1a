"""Spectral clustering of graphs and extraction of critical cut edges.

Nodes are embedded with ``k`` eigenvectors (of the ``k`` largest adjacency
eigenvalues by default, or the ``k`` smallest Laplacian eigenvalues) and
partitioned with a deterministic k-means. Edges whose endpoints land in
different clusters form the cut set; removing all of them at once
separates the clusters.
"""

from collections.abc import Mapping
from dataclasses import dataclass, field
import warnings

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin, TransformerMixin
from sklearn.exceptions import ConvergenceWarning
from sklearn.utils import check_array, check_random_state
from sklearn.utils.validation import check_is_fitted

from .exceptions import UnlabeledNodeError
from .graph import adjacency_matrix, connected_components, laplacian_matrix
from .spectral import symmetric_eigen
from .utils.validation import check_graph, check_n_clusters

__all__ = [
    "KMeans",
    "SpectralEmbedding",
    "SpectralCutClustering",
    "ClusteringResult",
    "DisconnectionCheck",
    "spectral_embedding",
    "auto_select_k",
    "kmeans",
    "spectral_clustering",
    "cut_edges",
    "verify_disconnection",
]

MODES = ("adjacency", "laplacian")


def _sq_dists(X, C):
    return ((X[:, None, :] - C[None, :, :]) ** 2).sum(axis=2)


def _farthest_first(X, k, first):
    chosen = [first]
    mind = ((X - X[first]) ** 2).sum(axis=1)
    taken = np.zeros(len(X), dtype=bool)
    taken[first] = True
    for _ in range(1, k):
        cand = np.where(taken, -1.0, mind)
        nxt = int(np.argmax(cand))
        chosen.append(nxt)
        taken[nxt] = True
        mind = np.minimum(mind, ((X - X[nxt]) ** 2).sum(axis=1))
    return X[chosen].copy()


def _repair_empty(X, labels, centers, k):
    """Move the point farthest from its centre into each empty cluster."""
    labels = labels.copy()
    counts = np.bincount(labels, minlength=k)
    for c in np.flatnonzero(counts == 0):
        d = ((X - centers[labels]) ** 2).sum(axis=1)
        d[counts[labels] <= 1] = -1.0
        p = int(np.argmax(d))
        counts[labels[p]] -= 1
        labels[p] = c
        counts[c] += 1
    return labels


def _means(X, labels, k):
    C = np.zeros((k, X.shape[1]))
    for c in range(k):
        C[c] = X[labels == c].mean(axis=0)
    return C


class KMeans(ClusterMixin, BaseEstimator):
    """Lloyd's k-means with deterministic farthest-first seeding.

    Parameters
    ----------
    n_clusters : int, default=2
    init : {"farthest", "random"}, default="farthest"
        ``"farthest"`` starts from the lowest-index point; ``"random"`` draws
        the first centre from ``random_state``. Remaining centres are picked
        farthest-first, ties going to the lowest index.
    max_iter : int, default=300
    random_state : int, RandomState or None, default=0

    Attributes
    ----------
    labels_ : ndarray of shape (n_samples,)
        Cluster labels, renumbered in order of first appearance.
    cluster_centers_ : ndarray of shape (n_clusters, n_features)
    inertia_ : float
    n_iter_ : int
    """

    def __init__(self, n_clusters=2, init="farthest", max_iter=300, random_state=0):
        self.n_clusters = n_clusters
        self.init = init
        self.max_iter = max_iter
        self.random_state = random_state

    def fit(self, X, y=None):
        X = check_array(X, dtype=np.float64)
        n = X.shape[0]
        k = check_n_clusters(self.n_clusters, n)
        if self.init == "farthest":
            first = 0
        elif self.init == "random":
            first = int(check_random_state(self.random_state).randint(n))
        else:
            raise ValueError(f"init must be 'farthest' or 'random', got {self.init!r}")

        centers = _farthest_first(X, k, first)
        labels = None
        converged = False
        for it in range(1, self.max_iter + 1):
            new = np.argmin(_sq_dists(X, centers), axis=1)
            new = _repair_empty(X, new, centers, k)
            if labels is not None and np.array_equal(new, labels):
                converged = True
                break
            labels = new
            centers = _means(X, labels, k)
        if not converged:
            warnings.warn(f"k-means did not converge in {self.max_iter} iterations",
                          ConvergenceWarning, stacklevel=2)

        # canonical numbering: clusters ordered by their lowest-index member
        _, first_seen = np.unique(labels, return_index=True)
        order = np.argsort(first_seen, kind="stable")
        relabel = np.empty(k, dtype=int)
        relabel[order] = np.arange(k)
        self.labels_ = relabel[labels]
        self.cluster_centers_ = centers[order]
        self.inertia_ = float(((X - self.cluster_centers_[self.labels_]) ** 2).sum())
        self.n_iter_ = it
        return self

    def predict(self, X):
        check_is_fitted(self, "cluster_centers_")
        X = check_array(X, dtype=np.float64)
        return np.argmin(_sq_dists(X, self.cluster_centers_), axis=1)


def kmeans(points, k, seed=0, init="farthest", max_iter=300):
    """Functional wrapper returning ``(labels, inertia)``."""
    est = KMeans(n_clusters=k, init=init, max_iter=max_iter, random_state=seed).fit(points)
    return est.labels_, est.inertia_


def _check_mode(mode):
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


def spectral_embedding(g, k, mode="adjacency"):
    """Node coordinates from ``k`` eigenvectors, shape ``(n, k)``.

    ``mode="adjacency"`` uses the eigenvectors of the ``k`` largest adjacency
    eigenvalues (largest first); ``mode="laplacian"`` those of the ``k``
    smallest Laplacian eigenvalues.
    """
    check_graph(g, min_nodes=1)
    _check_mode(mode)
    k = check_n_clusters(k, g.n_nodes)
    if mode == "adjacency":
        _, V = symmetric_eigen(adjacency_matrix(g))
        return V[:, ::-1][:, :k].copy()
    _, V = symmetric_eigen(laplacian_matrix(g))
    return V[:, :k].copy()


def auto_select_k(eigenvalues, tau=1.02, min_k=2):
    """Smallest ``i >= min_k`` with ``|phi_i| / |phi_{i+1}| >= tau`` (1-based).

    ``eigenvalues`` must be sorted in descending order. Scanning stops at
    the first ``|phi_{i+1}| < 1e-12`` and returns ``max(i, min_k)``. Falls
    back to ``min_k`` when no ratio qualifies.
    """
    phi = np.abs(np.asarray(eigenvalues, dtype=float))
    if phi.ndim != 1 or len(phi) < 2:
        raise ValueError("need at least two eigenvalues")
    for i in range(1, len(phi)):
        a, b = phi[i - 1], phi[i]
        if b < 1e-12:
            return max(i, min_k)
        if i >= min_k and a / b >= tau:
            return i
    return min_k


@dataclass(frozen=True)
class DisconnectionCheck:
    removed_edges: list
    components_before: int
    components_after: int
    component_sizes_after: tuple

    @property
    def disconnects(self):
        return self.components_after > self.components_before


def verify_disconnection(g, removed):
    """Recount components after removing all of ``removed`` at once."""
    check_graph(g)
    removed = [tuple(e) for e in removed]
    before = connected_components(g)
    after = connected_components(g.without_edges(removed))
    return DisconnectionCheck(
        removed_edges=removed,
        components_before=before.component_count,
        components_after=after.component_count,
        component_sizes_after=after.component_sizes,
    )


def _label_array(g, labels):
    if isinstance(labels, Mapping):
        out = []
        for v in g.node_ids:
            if v not in labels:
                raise UnlabeledNodeError(v)
            out.append(labels[v])
        return np.asarray(out)
    labels = np.asarray(labels)
    if labels.shape != (g.n_nodes,):
        raise ValueError(f"expected {g.n_nodes} labels, got shape {labels.shape}")
    return labels


def cut_edges(g, labels):
    """Edges whose endpoints carry different labels, in graph edge order.

    ``labels`` is a mapping node -> label or an array aligned with
    ``g.node_ids``.
    """
    lab = _label_array(g, labels)
    ids = g.node_ids
    return [(ids[i], ids[j]) for i, j in g.edge_indices if lab[i] != lab[j]]


@dataclass(frozen=True)
class ClusteringResult:
    labels: np.ndarray
    k: int
    cut_edges: list
    embedding_mode: str
    seed: int
    inertia: float
    node_ids: tuple
    disconnection: DisconnectionCheck
    disconnected_clusters: list = field(default_factory=list)

    @property
    def label_map(self):
        return dict(zip(self.node_ids, self.labels.tolist()))

    @property
    def cluster_sizes(self):
        return tuple(np.bincount(self.labels, minlength=self.k).tolist())


def _internally_disconnected(g, labels, k):
    bad = []
    ids = g.node_ids
    for c in range(k):
        members = [ids[i] for i in np.flatnonzero(labels == c)]
        if connected_components(g.subgraph(members)).component_count > 1:
            bad.append(c)
    return bad


def spectral_clustering(g, k=None, mode="adjacency", seed=0, tau=1.02, min_k=2,
                        init="farthest", max_iter=300):
    """Partition ``g`` and report the cut edges between clusters.

    When ``k`` is None it is chosen by :func:`auto_select_k` on the
    descending adjacency spectrum, capped at ``n``.
    """
    check_graph(g, min_nodes=1)
    _check_mode(mode)
    n = g.n_nodes
    if k is None:
        if n < 2:
            k = 1
        else:
            phi = symmetric_eigen(adjacency_matrix(g))[0][::-1]
            k = min(auto_select_k(phi, tau=tau, min_k=min_k), n)
    k = check_n_clusters(k, n)
    X = spectral_embedding(g, k, mode)
    est = KMeans(n_clusters=k, init=init, max_iter=max_iter, random_state=seed).fit(X)
    labels = est.labels_
    cuts = cut_edges(g, labels)
    bad = _internally_disconnected(g, labels, k)
    if bad:
        warnings.warn(f"clusters {bad} are not internally connected; reporting as-is",
                      RuntimeWarning, stacklevel=2)
    return ClusteringResult(
        labels=labels,
        k=k,
        cut_edges=cuts,
        embedding_mode=mode,
        seed=seed,
        inertia=est.inertia_,
        node_ids=g.node_ids,
        disconnection=verify_disconnection(g, cuts),
        disconnected_clusters=bad,
    )


class SpectralEmbedding(TransformerMixin, BaseEstimator):
    """Embed the nodes of a graph with ``n_components`` eigenvectors.

    ``fit`` takes a :class:`~resilnet.graph.Graph`; ``transform`` returns the
    embedding of that same graph.
    """

    def __init__(self, n_components=2, mode="adjacency"):
        self.n_components = n_components
        self.mode = mode

    def fit(self, g, y=None):
        self.embedding_ = spectral_embedding(g, self.n_components, self.mode)
        self.n_nodes_ = g.n_nodes
        return self

    def transform(self, g):
        check_is_fitted(self, "embedding_")
        if g.n_nodes != self.n_nodes_:
            raise ValueError("transform expects the graph passed to fit")
        return spectral_embedding(g, self.n_components, self.mode)

    def fit_transform(self, g, y=None):
        return self.fit(g).embedding_


class SpectralCutClustering(ClusterMixin, BaseEstimator):
    """Estimator form of :func:`spectral_clustering`.

    Parameters
    ----------
    n_clusters : int or None, default=None
        None selects the count from the adjacency eigenvalue ratios.
    mode : {"adjacency", "laplacian"}, default="adjacency"
    tau : float, default=1.02
        Eigenvalue-ratio threshold for automatic selection.
    min_clusters : int, default=2
    random_state : int, default=0

    Attributes
    ----------
    labels_, n_clusters_, cut_edges_, inertia_, result_
    """

    def __init__(self, n_clusters=None, mode="adjacency", tau=1.02, min_clusters=2,
                 init="farthest", random_state=0):
        self.n_clusters = n_clusters
        self.mode = mode
        self.tau = tau
        self.min_clusters = min_clusters
        self.init = init
        self.random_state = random_state

    def fit(self, g, y=None):
        res = spectral_clustering(g, k=self.n_clusters, mode=self.mode,
                                  seed=self.random_state, tau=self.tau,
                                  min_k=self.min_clusters, init=self.init)
        self.result_ = res
        self.labels_ = res.labels
        self.n_clusters_ = res.k
        self.cut_edges_ = res.cut_edges
        self.inertia_ = res.inertia
        return self
