"""Command-line interface: ``resilnet measures|spectral|dissim|cluster``.

Exit codes: 0 success, 2 bad input or usage, 3 numerical failure.
"""

import argparse
import csv
import hashlib
import io
import json
import math
from pathlib import Path
import sys
import warnings

import numpy as np

from . import __version__
from .cluster import spectral_clustering
from .datasets import anytown_path
from .dissimilarity import dissimilarity_matrix
from .exceptions import BadKError, BadWeightsError, GraphError, NoConvergenceError, ParseError
from .io import LINK_TYPES, prune_leaves, read_graph
from .measures import measure_report
from .spectral import spectral_summary

MEASURE_KEYS = (
    "density",
    "link_per_node_ratio",
    "mean_degree",
    "central_point_dominance",
    "clustering_coefficient",
    "diameter",
    "characteristic_path_length",
)

BUILTINS = {
    "builtin:anytown": lambda: anytown_path("edgelist"),
    "builtin:anytown-inp": lambda: anytown_path("inp"),
}


class UsageError(Exception):
    pass


def _fmt_scalar(x):
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isinf(x):
            return '"inf"' if x > 0 else '"-inf"'
        if math.isnan(x):
            return '"nan"'
        return f"{x:.6f}"
    if x is None:
        return "null"
    return _json_str(x)


def _json_str(s):
    return json.dumps(str(s), ensure_ascii=False)


def dump_json(obj, indent=2, _level=0):
    """Serialise with a fixed float format (6 decimals) and insertion key order."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{_json_str(k)}: {dump_json(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in obj):
            return "[" + ", ".join(_fmt_scalar(v) for v in obj) + "]"
        items = [pad + dump_json(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    return _fmt_scalar(obj)


def _csv_cell(x):
    if isinstance(x, (float, np.floating)):
        return "inf" if math.isinf(x) else f"{float(x):.6f}"
    return str(x)


def _resolve(path):
    return Path(BUILTINS[path]()) if path in BUILTINS else Path(path)


def _load(path, args):
    p = _resolve(path)
    if not p.is_file():
        raise UsageError(f"{path}: no such file")
    links = tuple(args.links.split(",")) if getattr(args, "links", None) else LINK_TYPES
    bad = set(links) - set(LINK_TYPES)
    if bad:
        raise UsageError(f"--links: unknown link type(s) {sorted(bad)}")
    g = read_graph(p, fmt=args.input_format, weighted=args.weighted, link_types=links,
                   drop_isolated=args.drop_isolated)
    if args.prune_leaves:
        g = prune_leaves(g, iterative=args.iterative_prune)
    name = p.stem if path not in BUILTINS else path.split(":", 1)[1]
    return g, name, hashlib.sha256(p.read_bytes()).hexdigest()


def _header(name, checksum):
    return {"graph": name, "tool_version": __version__, "input_sha256": checksum}


def _emit(text, args):
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _emit_records(records, keys, args):
    if args.format == "json":
        body = records[0] if len(records) == 1 else records
        _emit(dump_json(body) + "\n", args)
        return
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["graph"] + list(keys))
    for r in records:
        w.writerow([r["graph"]] + [_csv_cell(r[k]) for k in keys])
    _emit(buf.getvalue(), args)


def cmd_measures(args):
    records = []
    for path in args.inputs:
        g, name, checksum = _load(path, args)
        rep = measure_report(g, weighted=args.weighted).to_dict()
        rec = _header(name, checksum)
        rec.update(n_nodes=rep["n_nodes"], n_edges=rep["n_edges"])
        rec.update({k: rep[k] for k in MEASURE_KEYS})
        if math.isinf(rep["diameter"]):
            warnings.warn(f"{name}: graph is disconnected; diameter is infinite")
        records.append(rec)
    _emit_records(records, ("n_nodes", "n_edges") + MEASURE_KEYS, args)


def cmd_spectral(args):
    records = []
    keys = ["algebraic_connectivity", "spectral_gap_laplacian"]
    if args.both_gaps:
        keys.append("spectral_gap_adjacency")
    keys += ["spectral_radius", "zero_multiplicity"]
    for path in args.inputs:
        g, name, checksum = _load(path, args)
        s = spectral_summary(g, weighted=args.weighted)
        if not s.is_connected:
            warnings.warn(f"{name}: graph is disconnected "
                          f"({s.zero_multiplicity} zero Laplacian eigenvalues)")
        rec = _header(name, checksum)
        rec.update(n_nodes=g.n_nodes, n_edges=g.n_edges)
        values = {
            "algebraic_connectivity": s.algebraic_connectivity,
            "spectral_gap_laplacian": s.spectral_gap,
            "spectral_gap_adjacency": s.spectral_gap_adjacency,
            "spectral_radius": s.spectral_radius,
            "zero_multiplicity": s.zero_multiplicity,
        }
        rec.update({k: values[k] for k in keys})
        records.append(rec)
    _emit_records(records, ["n_nodes", "n_edges"] + keys, args)


def cmd_dissim(args):
    if len(args.inputs) < 2:
        raise UsageError("dissim needs at least two input networks")
    loaded = [_load(p, args) for p in args.inputs]
    graphs = [g for g, _, _ in loaded]
    names = [n for _, n, _ in loaded]
    D = dissimilarity_matrix(graphs, w1=args.w1, w2=args.w2,
                             normalized=not args.jsd_unnormalized)
    if args.format == "json":
        body = {
            "graphs": names,
            "w1": args.w1,
            "w2": 1.0 - args.w1 if args.w2 is None else args.w2,
            "matrix": [list(row) for row in D],
        }
        _emit(dump_json(body) + "\n", args)
        return
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([""] + names)
    for name, row in zip(names, D):
        w.writerow([name] + [_csv_cell(x) for x in row])
    _emit(buf.getvalue(), args)


def to_dot(g, result, name="G"):
    """DOT text with a ``cluster`` node attribute and red ``critical`` cut edges."""
    cuts = {frozenset(e) for e in result.cut_edges}
    lines = [f"graph {_json_str(name)} {{"]
    for v, lab in zip(g.node_ids, result.labels.tolist()):
        lines.append(f"  {_json_str(v)} [cluster={lab}];")
    for u, v in g.edges:
        attrs = " [critical=true, color=red, penwidth=2]" if frozenset((u, v)) in cuts else ""
        lines.append(f"  {_json_str(u)} -- {_json_str(v)}{attrs};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_cluster(args):
    g, name, checksum = _load(args.inputs[0], args)
    if args.k is not None and not 1 <= args.k <= g.n_nodes:
        raise UsageError(f"--k must be between 1 and {g.n_nodes}")
    res = spectral_clustering(g, k=args.k, mode=args.mode, seed=args.seed, tau=args.tau)
    chk = res.disconnection
    body = _header(name, checksum)
    body.update(
        n_nodes=g.n_nodes,
        n_edges=g.n_edges,
        k=res.k,
        embedding_mode=res.embedding_mode,
        seed=res.seed,
        inertia=res.inertia,
        cluster_sizes=list(res.cluster_sizes),
        labels=res.label_map,
        cut_edges=[list(e) for e in res.cut_edges],
        disconnection={
            "removed_edges": len(chk.removed_edges),
            "components_before": chk.components_before,
            "components_after": chk.components_after,
            "component_sizes_after": list(chk.component_sizes_after),
        },
        disconnected_clusters=list(res.disconnected_clusters),
    )
    _emit(dump_json(body) + "\n", args)
    if args.dot:
        Path(args.dot).write_text(to_dot(g, res, name), encoding="utf-8")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default=None,
                        help="output format (default: csv for dissim, json otherwise)")
    common.add_argument("--input-format", choices=("edgelist", "inp"), default=None,
                        help="override detection by file extension")
    common.add_argument("--prune-leaves", action="store_true",
                        help="drop degree-1 nodes before analysis")
    common.add_argument("--iterative-prune", action="store_true",
                        help="with --prune-leaves, repeat until no leaf remains")
    common.add_argument("--weighted", action="store_true",
                        help="use edge weights (pipe lengths for INP input)")
    common.add_argument("--links", default=None,
                        help="INP link types to include, comma separated (pipe,pump,valve)")
    common.add_argument("--drop-isolated", action="store_true",
                        help="omit INP nodes not touched by any included link")
    common.add_argument("-o", "--output", default=None, help="write to file instead of stdout")

    parser = argparse.ArgumentParser(
        prog="resilnet", description="Structural and spectral resilience analysis of networks.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measures", parents=[common], help="structural measures")
    p.add_argument("inputs", nargs="+")
    p.set_defaults(func=cmd_measures)

    p = sub.add_parser("spectral", parents=[common], help="spectral measures")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--both-gaps", action="store_true",
                   help="also report the adjacency spectral gap")
    p.set_defaults(func=cmd_spectral)

    p = sub.add_parser("dissim", parents=[common], help="pairwise dissimilarity matrix")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--w1", type=float, default=0.5)
    p.add_argument("--w2", type=float, default=None, help="defaults to 1 - w1")
    p.add_argument("--jsd-unnormalized", action="store_true",
                   help="omit the 1/n factor in node dispersion")
    p.set_defaults(func=cmd_dissim)

    p = sub.add_parser("cluster", parents=[common], help="spectral clustering and cut edges")
    p.add_argument("inputs", nargs=1)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--mode", choices=("adjacency", "laplacian"), default="adjacency")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tau", type=float, default=1.02)
    p.add_argument("--dot", default=None, help="also write a DOT graph to this path")
    p.set_defaults(func=cmd_cluster)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = "csv" if args.command == "dissim" else "json"

    def show(message, category, filename, lineno, file=None, line=None):
        print(f"warning: {message}", file=sys.stderr)

    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            warnings.showwarning = show
            args.func(args)
    except NoConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (UsageError, ParseError, GraphError, BadKError, BadWeightsError, ValueError,
            OSError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
