"""
Adjacency lists, the layout the crawled web-graph collections ship in:
one line per source node, "u: v1 v2 ... -1". The colon is optional and a
trailing -1 terminator is ignored. A line holding only "u" declares an
isolated node.
"""

from hubrank.src.rank.proc.common_util.util import FileFormatError, ParameterError
from hubrank.src.rank.proc.graph.edge_list_file import _parse_index, _text_lines, build_graph
from hubrank.src.rank.proc.graph.graph_file import GraphFile

TERMINATOR = "-1"


def load_adjacency_list(stream, index_base=0, n=None):
    """
    :param stream: Iterable of lines (text or bytes).
    :param index_base: 0 or 1.
    :param n: Optional declared node count.
    :returns: DirectedGraph
    :raises FileFormatError: non-integer ids or ids out of range.
    """
    if index_base not in (0, 1):
        raise ParameterError("Index base must be 0 or 1, got {}".format(index_base))

    sources, targets = [], []
    largest = -1

    for lineno, raw in enumerate(_text_lines(stream), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue

        head, sep, tail = line.partition(":")
        if not sep:
            head, _, tail = line.partition(" ")

        u = _parse_index(head.strip(), index_base, lineno)
        tokens = [token for token in tail.split() if token != TERMINATOR]
        heads = [_parse_index(token, index_base, lineno) for token in tokens]

        for v in [u] + heads:
            if v < 0 or (n is not None and v >= n):
                raise FileFormatError("line {}: node id out of range for base {}".format(lineno, index_base))

        largest = max([largest, u] + heads)
        sources.extend([u] * len(heads))
        targets.extend(heads)

    declared = max(n or 0, largest + 1) or None
    return build_graph(sources, targets, None, index_base, declared, "adjacency list")


class AdjacencyListFile(GraphFile):
    """
    Reader for adjacency-list files.
    """

    FILE_FORMAT = "adjlist"

    def parse(self, stream):
        return load_adjacency_list(stream, self.index_base, self.n)
