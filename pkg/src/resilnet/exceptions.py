"""Exception hierarchy for resilnet."""


class GraphError(ValueError):
    """Base class for invalid graph construction or queries."""


def _at(lineno):
    return "" if lineno is None else f"line {lineno}: "


class SelfLoopError(GraphError):
    def __init__(self, node, lineno=None):
        super().__init__(f"{_at(lineno)}self-loop on node {node!r}")
        self.node = node
        self.lineno = lineno


class DuplicateEdgeError(GraphError):
    def __init__(self, u, v, lineno=None):
        super().__init__(f"{_at(lineno)}duplicate edge ({u!r}, {v!r})")
        self.edge = (u, v)
        self.lineno = lineno


class UnknownNodeError(GraphError, KeyError):
    def __init__(self, node, lineno=None):
        super().__init__(f"{_at(lineno)}unknown node {node!r}")
        self.node = node
        self.lineno = lineno

    def __str__(self):
        return self.args[0]


class UnknownEdgeError(GraphError, KeyError):
    def __init__(self, u, v):
        super().__init__(f"unknown edge ({u!r}, {v!r})")
        self.edge = (u, v)

    def __str__(self):
        return self.args[0]


class NegativeWeightError(GraphError):
    def __init__(self, u, v, weight):
        super().__init__(f"negative weight {weight!r} on edge ({u!r}, {v!r})")
        self.edge = (u, v)
        self.weight = weight


class NotConnectedError(GraphError):
    """Raised when an operation requires a connected graph."""


class TooFewNodesError(GraphError):
    pass


class NoConnectedPairError(GraphError):
    pass


class NoConvergenceError(ArithmeticError):
    """An iterative numerical routine hit its iteration cap."""


class NotSymmetricError(ValueError):
    pass


class ParseError(ValueError):
    """Malformed network file. ``lineno`` is 1-based when known."""

    def __init__(self, message, lineno=None):
        super().__init__(_at(lineno) + message)
        self.lineno = lineno


class BadWeightsError(ValueError):
    pass


class BadKError(ValueError):
    """Requested cluster count or embedding dimension is out of range."""


class UnlabeledNodeError(GraphError, KeyError):
    def __init__(self, node):
        super().__init__(f"node {node!r} has no cluster label")
        self.node = node

    def __str__(self):
        return self.args[0]
