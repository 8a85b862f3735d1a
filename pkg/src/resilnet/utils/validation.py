"""Input validation helpers shared by the estimators and measure functions."""

import math

from ..exceptions import BadKError, BadWeightsError, TooFewNodesError
from ..graph import Graph


def check_graph(g, min_nodes=0):
    """Ensure ``g`` is a :class:`~resilnet.graph.Graph` with enough nodes."""
    if not isinstance(g, Graph):
        raise TypeError(f"expected a resilnet Graph, got {type(g).__name__}")
    if g.n_nodes < min_nodes:
        raise TooFewNodesError(
            f"operation needs at least {min_nodes} nodes, graph has {g.n_nodes}")
    return g


def check_weights(w1, w2=None):
    """Return ``(w1, w2)`` with ``w2`` defaulting to ``1 - w1``."""
    if w2 is None:
        w2 = 1.0 - w1
    w1, w2 = float(w1), float(w2)
    if w1 < 0 or w2 < 0 or not math.isclose(w1 + w2, 1.0, rel_tol=0, abs_tol=1e-12):
        raise BadWeightsError(f"weights must be nonnegative and sum to 1, got ({w1}, {w2})")
    return w1, w2


def check_n_clusters(k, n_samples):
    if isinstance(k, bool) or not hasattr(k, "__index__"):
        raise BadKError(f"number of clusters must be an integer, got {k!r}")
    k = k.__index__()
    if k < 1 or k > n_samples:
        raise BadKError(f"number of clusters must be in [1, {n_samples}], got {k}")
    return k
