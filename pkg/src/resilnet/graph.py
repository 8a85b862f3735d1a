"""Immutable undirected simple graph and path-based primitives.

Nodes carry opaque identifiers (usually strings taken from input files) and
are mapped to dense indices ``0..n-1`` in insertion order; every matrix and
per-node array in the package uses that order.
"""

from collections import deque
from collections.abc import Mapping
from dataclasses import dataclass
import heapq
import math

import numpy as np

from .exceptions import (
    DuplicateEdgeError,
    GraphError,
    NegativeWeightError,
    NoConnectedPairError,
    SelfLoopError,
    UnknownEdgeError,
    UnknownNodeError,
)

__all__ = [
    "Graph",
    "ComponentLabeling",
    "build_graph",
    "degree",
    "degrees",
    "adjacency_matrix",
    "laplacian_matrix",
    "single_source_distances",
    "distance_matrix",
    "connected_components",
    "diameter",
    "component_diameters",
    "characteristic_path_length",
    "eccentricity",
]


class Graph:
    """Undirected simple graph with optional nonnegative edge weights.

    Use :func:`build_graph` to construct one; the constructor assumes its
    arguments were already validated.
    """

    __slots__ = ("_nodes", "_index", "_edges", "_weights", "_adj", "_adj_w", "name")

    def __init__(self, nodes, index, edges, weights, name=None):
        self._nodes = nodes
        self._index = index
        self._edges = edges
        self._weights = weights
        self.name = name
        nbrs = [[] for _ in nodes]
        for k, (i, j) in enumerate(edges):
            w = 1.0 if weights is None else weights[k]
            nbrs[i].append((j, w))
            nbrs[j].append((i, w))
        # sorted neighbour lists give lowest-index tie-breaking in traversals
        for lst in nbrs:
            lst.sort()
        self._adj = tuple(tuple(j for j, _ in lst) for lst in nbrs)
        self._adj_w = tuple(tuple(w for _, w in lst) for lst in nbrs)

    @property
    def node_ids(self):
        return self._nodes

    @property
    def n_nodes(self):
        return len(self._nodes)

    @property
    def n_edges(self):
        return len(self._edges)

    @property
    def is_weighted(self):
        return self._weights is not None

    @property
    def edge_indices(self):
        """Edges as ``(i, j)`` index pairs with ``i < j``, in insertion order."""
        return self._edges

    @property
    def edges(self):
        """Edges as node-id pairs, in insertion order."""
        nodes = self._nodes
        return [(nodes[i], nodes[j]) for i, j in self._edges]

    @property
    def weights(self):
        """Edge weights aligned with :attr:`edges`, or None if unweighted."""
        return None if self._weights is None else list(self._weights)

    def index(self, node):
        try:
            return self._index[node]
        except (KeyError, TypeError):
            raise UnknownNodeError(node) from None

    def neighbors(self, node):
        return [self._nodes[j] for j in self._adj[self.index(node)]]

    def has_edge(self, u, v):
        i, j = self.index(u), self.index(v)
        return j in self._adj[i]

    def edge_key(self, u, v):
        """Index pair ``(min, max)`` for an existing edge."""
        try:
            i, j = self._index[u], self._index[v]
        except (KeyError, TypeError):
            raise UnknownEdgeError(u, v) from None
        if j not in self._adj[i]:
            raise UnknownEdgeError(u, v)
        return (i, j) if i < j else (j, i)

    def without_edges(self, edges):
        """Return a copy with ``edges`` (node-id pairs) removed."""
        drop = {self.edge_key(u, v) for u, v in edges}
        keep = [k for k, e in enumerate(self._edges) if e not in drop]
        new_edges = tuple(self._edges[k] for k in keep)
        new_w = None if self._weights is None else tuple(self._weights[k] for k in keep)
        return Graph(self._nodes, self._index, new_edges, new_w, name=self.name)

    def subgraph(self, nodes):
        """Induced subgraph on ``nodes``, keeping this graph's node order."""
        wanted = {self.index(v) for v in nodes}
        order = [i for i in range(self.n_nodes) if i in wanted]
        remap = {old: new for new, old in enumerate(order)}
        new_nodes = tuple(self._nodes[i] for i in order)
        new_edges, new_w = [], []
        for k, (i, j) in enumerate(self._edges):
            if i in remap and j in remap:
                new_edges.append((remap[i], remap[j]))
                if self._weights is not None:
                    new_w.append(self._weights[k])
        return Graph(
            new_nodes,
            {v: k for k, v in enumerate(new_nodes)},
            tuple(new_edges),
            None if self._weights is None else tuple(new_w),
            name=self.name,
        )

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<Graph{label} n={self.n_nodes} m={self.n_edges}>"


def build_graph(node_ids, edge_list, weights=None, name=None):
    """Validate inputs and build a :class:`Graph`.

    Parameters
    ----------
    node_ids : iterable of hashable
        Unique node identifiers; their order fixes matrix row order.
    edge_list : iterable of (u, v)
        Undirected edges. ``(u, v)`` and ``(v, u)`` are the same edge.
    weights : mapping or sequence, optional
        Either a mapping ``{(u, v): w}`` (either orientation) or a sequence
        aligned with ``edge_list``. Weights must be nonnegative.
    """
    nodes = tuple(node_ids)
    index = {}
    for k, v in enumerate(nodes):
        if v in index:
            raise GraphError(f"duplicate node id {v!r}")
        index[v] = k

    edge_list = [tuple(e) for e in edge_list]
    if weights is not None and not isinstance(weights, Mapping):
        weights = list(weights)
        if len(weights) != len(edge_list):
            raise GraphError("weights sequence must align with edge_list")

    seen = set()
    edges = []
    wts = None if weights is None else []
    for k, e in enumerate(edge_list):
        if len(e) != 2:
            raise GraphError(f"edge must be a pair, got {e!r}")
        u, v = e
        for x in (u, v):
            if x not in index:
                raise UnknownNodeError(x)
        if u == v:
            raise SelfLoopError(u)
        i, j = index[u], index[v]
        key = (i, j) if i < j else (j, i)
        if key in seen:
            raise DuplicateEdgeError(u, v)
        seen.add(key)
        edges.append(key)
        if weights is not None:
            if isinstance(weights, Mapping):
                if (u, v) in weights:
                    w = weights[(u, v)]
                elif (v, u) in weights:
                    w = weights[(v, u)]
                else:
                    raise GraphError(f"missing weight for edge ({u!r}, {v!r})")
            else:
                w = weights[k]
            w = float(w)
            if not math.isfinite(w):
                raise GraphError(f"non-finite weight {w!r} on edge ({u!r}, {v!r})")
            if w < 0:
                raise NegativeWeightError(u, v, w)
            wts.append(w)
    return Graph(nodes, index, tuple(edges), None if wts is None else tuple(wts), name=name)


def degree(g, node, weighted=False):
    """Number of incident edges, or the sum of their weights."""
    i = g.index(node)
    if weighted and g.is_weighted:
        return float(sum(g._adj_w[i]))
    return len(g._adj[i])


def degrees(g, weighted=False):
    if weighted and g.is_weighted:
        return np.array([sum(ws) for ws in g._adj_w], dtype=float)
    return np.array([len(a) for a in g._adj], dtype=float)


def adjacency_matrix(g, weighted=False):
    n = g.n_nodes
    A = np.zeros((n, n))
    use_w = weighted and g.is_weighted
    for k, (i, j) in enumerate(g._edges):
        w = g._weights[k] if use_w else 1.0
        A[i, j] = A[j, i] = w
    return A


def laplacian_matrix(g, weighted=False):
    """``L = D - A``."""
    A = adjacency_matrix(g, weighted=weighted)
    return np.diag(A.sum(axis=1)) - A


def _bfs(g, s):
    dist = np.full(g.n_nodes, np.inf)
    dist[s] = 0.0
    queue = deque([s])
    adj = g._adj
    while queue:
        v = queue.popleft()
        dv = dist[v] + 1.0
        for w in adj[v]:
            if dist[w] == np.inf:
                dist[w] = dv
                queue.append(w)
    return dist


def _dijkstra(g, s):
    dist = np.full(g.n_nodes, np.inf)
    dist[s] = 0.0
    done = np.zeros(g.n_nodes, dtype=bool)
    heap = [(0.0, s)]
    while heap:
        d, v = heapq.heappop(heap)
        if done[v]:
            continue
        done[v] = True
        for w, wt in zip(g._adj[v], g._adj_w[v]):
            nd = d + wt
            if nd < dist[w]:
                dist[w] = nd
                heapq.heappush(heap, (nd, w))
    return dist


def _sssp(g, s, weighted):
    if weighted and g.is_weighted:
        return _dijkstra(g, s)
    return _bfs(g, s)


def single_source_distances(g, source, weighted=False):
    """Shortest-path distances from ``source``; ``inf`` marks unreachable nodes."""
    return _sssp(g, g.index(source), weighted)


def distance_matrix(g, weighted=False):
    """All-pairs shortest-path distances ``T``, with ``inf`` for unreachable pairs."""
    n = g.n_nodes
    T = np.empty((n, n))
    for s in range(n):
        T[s] = _sssp(g, s, weighted)
    return T


@dataclass(frozen=True)
class ComponentLabeling:
    labels: np.ndarray
    component_count: int
    component_sizes: tuple

    def members(self, label):
        return np.flatnonzero(self.labels == label)


def connected_components(g):
    """Label components in order of their lowest-index node."""
    n = g.n_nodes
    labels = np.full(n, -1, dtype=int)
    sizes = []
    for s in range(n):
        if labels[s] >= 0:
            continue
        c = len(sizes)
        labels[s] = c
        stack = [s]
        size = 0
        while stack:
            v = stack.pop()
            size += 1
            for w in g._adj[v]:
                if labels[w] < 0:
                    labels[w] = c
                    stack.append(w)
        sizes.append(size)
    return ComponentLabeling(labels, len(sizes), tuple(sizes))


def _check_nonempty(g):
    if g.n_nodes == 0:
        raise GraphError("graph has no nodes")


def diameter(g, weighted=False, distances=None):
    """Largest shortest-path distance; ``inf`` when the graph is disconnected.

    See :func:`component_diameters` for per-component values.
    """
    _check_nonempty(g)
    T = distance_matrix(g, weighted) if distances is None else distances
    return float(T.max())


def component_diameters(g, weighted=False, distances=None):
    """Diameter of each connected component, ordered as :func:`connected_components`."""
    _check_nonempty(g)
    T = distance_matrix(g, weighted) if distances is None else distances
    comp = connected_components(g)
    return [float(T[np.ix_(comp.members(c), comp.members(c))].max())
            for c in range(comp.component_count)]


def characteristic_path_length(g, weighted=False, distances=None):
    """Mean shortest-path length over unordered pairs joined by a path."""
    T = distance_matrix(g, weighted) if distances is None else distances
    iu = np.triu_indices(g.n_nodes, k=1)
    d = T[iu]
    d = d[np.isfinite(d)]
    if d.size == 0:
        raise NoConnectedPairError("no pair of nodes is connected by a path")
    return float(d.mean())


def eccentricity(g, node, weighted=False):
    """Maximum distance from ``node``; ``inf`` if some node is unreachable."""
    return float(single_source_distances(g, node, weighted).max())
