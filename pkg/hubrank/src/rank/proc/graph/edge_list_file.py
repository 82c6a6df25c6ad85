"""
Whitespace-separated edge lists: one "u v" or "u v w" per line, '#' starts a
comment.
"""

import math

import numpy as np

from hubrank.src.rank.proc.common_util.util import FileFormatError, ParameterError
from hubrank.src.rank.proc.graph.directed_graph import DirectedGraph
from hubrank.src.rank.proc.graph.graph_file import GraphFile


def _text_lines(stream):
    for line in stream:
        if isinstance(line, bytes):
            line = line.decode("utf-8")
        yield line


def _parse_index(token, index_base, lineno):
    try:
        value = int(token)
    except ValueError:
        raise FileFormatError("line {}: node id {!r} is not an integer".format(lineno, token))
    return value - index_base


def build_graph(sources, targets, weights, index_base, n, source_name="input"):
    """
    Turn parsed 0-based edge arrays into a DirectedGraph.

    The node count is max(n, 1 + largest index) so isolated trailing nodes
    survive.
    """
    if not sources and not n:
        raise FileFormatError("{} holds no edges and no node count was declared".format(source_name))

    inferred = 1 + max(max(sources, default=-1), max(targets, default=-1))
    node_count = max(n or 0, inferred)

    return DirectedGraph.from_edges(node_count, np.array(sources, dtype=np.int64),
                                    np.array(targets, dtype=np.int64),
                                    weights=weights, index_base=index_base)


def load_edge_list(stream, index_base=0, n=None):
    """
    Read an edge list.

    :param stream: Iterable of lines (text or bytes).
    :param index_base: 0 or 1, the base node ids are written in.
    :param n: Optional declared node count; ids must then lie below it.
    :returns: DirectedGraph with duplicates merged and self-loops dropped.
    :raises FileFormatError: malformed line, negative weight, id out of range.
    """
    if index_base not in (0, 1):
        raise ParameterError("Index base must be 0 or 1, got {}".format(index_base))

    sources, targets, weights = [], [], []
    weighted = False

    for lineno, raw in enumerate(_text_lines(stream), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue

        tokens = line.split()
        if len(tokens) not in (2, 3):
            raise FileFormatError("line {}: expected 'u v' or 'u v w', got {!r}".format(lineno, raw.strip()))

        u = _parse_index(tokens[0], index_base, lineno)
        v = _parse_index(tokens[1], index_base, lineno)

        w = 1.0
        if len(tokens) == 3:
            weighted = True
            try:
                w = float(tokens[2])
            except ValueError:
                raise FileFormatError("line {}: weight {!r} is not a number".format(lineno, tokens[2]))
            if not math.isfinite(w) or w < 0:
                raise FileFormatError("line {}: weight must be finite and nonnegative, got {}".format(lineno, tokens[2]))

        if u < 0 or v < 0 or (n is not None and max(u, v) >= n):
            raise FileFormatError("line {}: node id out of range for base {}{}".format(
                lineno, index_base, "" if n is None else " and n={}".format(n)))

        sources.append(u)
        targets.append(v)
        weights.append(w)

    return build_graph(sources, targets, weights if weighted else None, index_base, n, "edge list")


def write_edge_list(g, stream):
    """
    Write the canonical 0-based, row-major sorted edge list of g.
    Weights are written only for weighted graphs.
    """
    for i, j, w in g.edges():
        if g.weighted:
            stream.write("{} {} {!r}\n".format(i, j, w))
        else:
            stream.write("{} {}\n".format(i, j))


class EdgeListFile(GraphFile):
    """
    Reader for edge-list files.
    """

    FILE_FORMAT = "edgelist"

    def parse(self, stream):
        return load_edge_list(stream, self.index_base, self.n)
