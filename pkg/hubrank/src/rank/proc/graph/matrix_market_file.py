"""
Matrix Market coordinate files (pattern, real or integer field; general or
symmetric).
"""

import io

import scipy.io
import scipy.sparse as sp

from hubrank.src.rank.proc.common_util.util import FileFormatError
from hubrank.src.rank.proc.graph.directed_graph import DirectedGraph
from hubrank.src.rank.proc.graph.graph_file import GraphFile

MM_BANNER = "%%matrixmarket"
SUPPORTED_FIELDS = ("pattern", "real", "integer")
SUPPORTED_SYMMETRY = ("general", "symmetric")


def read_header(text):
    """
    :returns: (format, field, symmetry) in lower case.
    :raises FileFormatError: on a missing banner or an unsupported layout.
    """
    first = text.lstrip().split("\n", 1)[0]
    tokens = first.lower().split()

    if len(tokens) != 5 or tokens[0] != MM_BANNER or tokens[1] != "matrix":
        raise FileFormatError("Missing '%%MatrixMarket matrix' header line: {!r}".format(first))

    layout, field, symmetry = tokens[2:]
    if layout != "coordinate":
        raise FileFormatError("Unsupported Matrix Market format '{}' (coordinate only)".format(layout))
    if field not in SUPPORTED_FIELDS:
        raise FileFormatError("Unsupported Matrix Market field '{}'".format(field))
    if symmetry not in SUPPORTED_SYMMETRY:
        raise FileFormatError("Unsupported Matrix Market symmetry '{}'".format(symmetry))

    return layout, field, symmetry


def load_matrix_market(stream):
    """
    Read a Matrix Market file into a DirectedGraph; symmetric files produce
    both edge directions, diagonal entries are dropped as self-loops.

    :param stream: Text or binary file-like object.
    :returns: DirectedGraph (0-based; Matrix Market ids are 1-based on disk).
    """
    text = stream.read()
    if isinstance(text, bytes):
        text = text.decode("utf-8")

    _, field, _ = read_header(text)

    try:
        matrix = scipy.io.mmread(io.BytesIO(text.encode("utf-8")))
    except Exception as ex:
        raise FileFormatError("Can't parse Matrix Market data: {}".format(ex))

    rows, cols = matrix.shape
    if rows != cols:
        raise FileFormatError("Adjacency matrix must be square, got {}x{}".format(rows, cols))

    coo = sp.coo_matrix(matrix)
    if (coo.data < 0).any():
        raise FileFormatError("Negative entries are not valid edge weights")

    weights = None if field == "pattern" else coo.data

    return DirectedGraph.from_edges(rows, coo.row, coo.col, weights=weights, index_base=1)


class MatrixMarketFile(GraphFile):
    """
    Reader for .mtx files. The declared node count comes from the header, so
    ``n`` and ``index_base`` are ignored.
    """

    FILE_FORMAT = "mtx"

    def parse(self, stream):
        return load_matrix_market(stream)
