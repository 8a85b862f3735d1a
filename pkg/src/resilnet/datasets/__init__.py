"""Bundled benchmark networks.

``anytown-exeter.inp`` is the Anytown benchmark as distributed by the
University of Exeter Centre for Water Systems (copied from the EPyT
package's ``networks/exeter-benchmarks`` directory). ``anytown.csv`` is its
pipe topology: the 43 [PIPES] records over the 24 nodes they touch. The
three parallel pumps and the reservoir they feed are left out, so the two
tanks stay as leaves hanging off the 22 junctions.
"""

from importlib import resources
import warnings

from ..io import parse_edge_list, read_inp

__all__ = ["anytown_path", "load_anytown", "load_anytown_source"]

_FILES = {"edgelist": "anytown.csv", "inp": "anytown-exeter.inp"}


def anytown_path(kind="edgelist"):
    """Filesystem path of a bundled Anytown file (``"edgelist"`` or ``"inp"``)."""
    return resources.files(__name__).joinpath("data", _FILES[kind])


def load_anytown_source():
    """Raw INP records of the Exeter Anytown model."""
    return read_inp(anytown_path("inp").read_text(encoding="utf-8"), name="anytown")


def load_anytown(full=False):
    """Anytown as a :class:`~resilnet.graph.Graph`.

    By default returns the pipe topology (24 nodes, 43 edges). ``full=True``
    parses every node and link of the INP file, collapsing the three
    parallel pumps (25 nodes, 44 edges).
    """
    if full:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", UserWarning)
            return load_anytown_source().to_graph()
    return parse_edge_list(anytown_path().read_text(encoding="utf-8"), name="anytown")
