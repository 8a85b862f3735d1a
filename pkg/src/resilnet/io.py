"""Readers for edge-list CSV and EPANET INP topology, and leaf pruning."""

from dataclasses import dataclass, field
from pathlib import Path
import warnings

from .exceptions import DuplicateEdgeError, ParseError, SelfLoopError, UnknownNodeError
from .graph import build_graph, degrees
from .utils.validation import check_graph

__all__ = [
    "NetworkSource",
    "parse_edge_list",
    "write_edge_list",
    "read_inp",
    "parse_inp",
    "prune_leaves",
    "read_graph",
]

NODE_SECTIONS = {"JUNCTIONS": "junction", "RESERVOIRS": "reservoir", "TANKS": "tank"}
LINK_SECTIONS = {"PIPES": "pipe", "PUMPS": "pump", "VALVES": "valve"}
LINK_TYPES = tuple(LINK_SECTIONS.values())
_NODES_TAG = "#nodes,"


def _is_number(s):
    try:
        float(s)
    except ValueError:
        return False
    return True


def parse_edge_list(text, name=None):
    """Parse ``source,target[,weight]`` lines into a graph.

    Lines starting with ``#`` and blank lines are skipped. A first data line
    whose third field is not numeric is taken as a header. Nodes are
    numbered in order of first appearance. Either every edge carries a
    weight or none does.

    A comment of the form ``#nodes,a,b,c`` declares nodes up front, fixing
    their order and allowing isolated nodes. :func:`write_edge_list` emits
    it so that a written graph reads back identically.
    """
    nodes = {}
    edges = []
    weights = []
    seen = {}
    header_checked = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith(_NODES_TAG):
            for x in (f.strip() for f in line[len(_NODES_TAG):].split(",")):
                if not x or x in nodes:
                    raise ParseError(f"bad or repeated node {x!r} in node declaration", lineno)
                nodes[x] = len(nodes)
            continue
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split(",")]
        if not header_checked:
            header_checked = True
            if len(fields) == 3 and not _is_number(fields[2]):
                continue
        if len(fields) not in (2, 3) or not all(fields[:2]):
            raise ParseError(f"expected 'source,target[,weight]', got {raw!r}", lineno)
        u, v = fields[0], fields[1]
        if len(fields) == 3:
            if not _is_number(fields[2]):
                raise ParseError(f"weight {fields[2]!r} is not a number", lineno)
            weights.append(float(fields[2]))
        if weights and len(weights) != len(edges) + 1:
            raise ParseError("weight column present on some lines but not others", lineno)
        if u == v:
            raise SelfLoopError(u, lineno)
        key = frozenset((u, v))
        if key in seen:
            raise DuplicateEdgeError(u, v, lineno)
        seen[key] = lineno
        for x in (u, v):
            nodes.setdefault(x, len(nodes))
        edges.append((u, v))
    return build_graph(list(nodes), edges, weights if weights else None, name=name)


def write_edge_list(g):
    """Serialise ``g`` as edge-list CSV, led by a ``#nodes`` declaration."""
    check_graph(g)
    for x in g.node_ids:
        x = str(x)
        if not x or "," in x or x != x.strip() or "\n" in x:
            raise ValueError(f"node id {x!r} cannot be written as CSV")
    w = g.weights
    lines = [_NODES_TAG + ",".join(map(str, g.node_ids))] if g.n_nodes else []
    for k, (u, v) in enumerate(g.edges):
        row = f"{u},{v}" if w is None else f"{u},{v},{w[k]!r}"
        lines.append(row)
    return "\n".join(lines) + ("\n" if lines else "")


@dataclass
class NetworkSource:
    """Raw topology records from a network file.

    ``nodes`` holds ``(id, kind)`` pairs, ``links`` holds
    ``(id, node1, node2, kind, length)`` tuples; ``length`` is None for
    pumps and valves.
    """

    name: str = None
    format: str = "inp"
    nodes: list = field(default_factory=list)
    links: list = field(default_factory=list)

    def to_graph(self, link_types=LINK_TYPES, weighted=False, drop_isolated=False):
        """Build a simple graph from the selected link types.

        Parallel links collapse to one edge (shortest length when weighted)
        with a warning. Pumps and valves weigh 0 in weighted mode.
        ``drop_isolated`` omits nodes touched by no selected link.
        """
        unknown = set(link_types) - set(LINK_TYPES)
        if unknown:
            raise ValueError(f"unknown link types {sorted(unknown)}")
        chosen = {}
        collapsed = 0
        for _, a, b, kind, length in self.links:
            if kind not in link_types:
                continue
            key = frozenset((a, b))
            w = 0.0 if length is None else length
            if key in chosen:
                collapsed += 1
                chosen[key] = (chosen[key][0], chosen[key][1], min(chosen[key][2], w))
            else:
                chosen[key] = (a, b, w)
        if collapsed:
            warnings.warn(f"{collapsed} parallel link(s) collapsed into single edges",
                          UserWarning, stacklevel=2)
        used = {x for key in chosen for x in key}
        node_ids = [v for v, _ in self.nodes if not drop_isolated or v in used]
        edge_list = [(a, b) for a, b, _ in chosen.values()]
        wts = [w for _, _, w in chosen.values()] if weighted else None
        return build_graph(node_ids, edge_list, wts, name=self.name)


def read_inp(text, name=None):
    """Read node and link records from EPANET INP text.

    Only [JUNCTIONS], [RESERVOIRS], [TANKS], [PIPES], [PUMPS] and [VALVES]
    are interpreted; other sections are skipped. Section names are
    case-insensitive and ``;`` starts a comment.
    """
    src = NetworkSource(name=name, format="inp")
    section = None
    node_ids = set()
    link_ids = {kind: set() for kind in LINK_TYPES}
    pending = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split(";", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ParseError(f"malformed section header {line!r}", lineno)
            section = line[1:-1].strip().upper()
            continue
        cols = line.split()
        if section in NODE_SECTIONS:
            nid = cols[0]
            if nid in node_ids:
                raise ParseError(f"duplicate node id {nid!r} in [{section}]", lineno)
            node_ids.add(nid)
            src.nodes.append((nid, NODE_SECTIONS[section]))
        elif section in LINK_SECTIONS:
            kind = LINK_SECTIONS[section]
            if len(cols) < 3:
                raise ParseError(f"[{section}] record needs id, node1, node2", lineno)
            lid, a, b = cols[:3]
            if lid in link_ids[kind]:
                raise ParseError(f"duplicate link id {lid!r} in [{section}]", lineno)
            link_ids[kind].add(lid)
            length = None
            if kind == "pipe" and len(cols) > 3:
                if not _is_number(cols[3]):
                    raise ParseError(f"pipe length {cols[3]!r} is not a number", lineno)
                length = float(cols[3])
            if a == b:
                raise SelfLoopError(a, lineno)
            pending.append(lineno)
            src.links.append((lid, a, b, kind, length))
    for lineno, (_, a, b, _, _) in zip(pending, src.links):
        for x in (a, b):
            if x not in node_ids:
                raise UnknownNodeError(x, lineno)
    return src


def parse_inp(text, name=None, link_types=LINK_TYPES, weighted=False, drop_isolated=False):
    """Parse EPANET INP text straight to a :class:`~resilnet.graph.Graph`."""
    return read_inp(text, name).to_graph(link_types, weighted, drop_isolated)


def prune_leaves(g, iterative=False):
    """Remove degree-1 nodes and their edges.

    One pass removes every node that has degree 1 in the input; with
    ``iterative=True`` passes repeat until no such node is left.
    """
    check_graph(g)
    while True:
        k = degrees(g)
        keep = [v for v, d in zip(g.node_ids, k) if d != 1]
        if len(keep) == g.n_nodes:
            break
        g = g.subgraph(keep)
        if not iterative:
            break
    if g.n_nodes == 0:
        warnings.warn("leaf pruning removed every node", UserWarning, stacklevel=2)
    return g


def read_graph(path, fmt=None, weighted=False, link_types=LINK_TYPES, drop_isolated=False):
    """Read a graph from ``path``; ``.inp`` files are EPANET, anything else edge-list CSV."""
    path = Path(path)
    text = path.read_text(encoding="utf-8-sig")
    if fmt is None:
        fmt = "inp" if path.suffix.lower() == ".inp" else "edgelist"
    if fmt == "inp":
        return parse_inp(text, name=path.stem, link_types=link_types, weighted=weighted,
                         drop_isolated=drop_isolated)
    if fmt == "edgelist":
        return parse_edge_list(text, name=path.stem)
    raise ValueError(f"unknown format {fmt!r}")
