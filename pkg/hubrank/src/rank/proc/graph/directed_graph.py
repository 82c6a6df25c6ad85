"""
Directed graph held in forward and reverse compressed sparse row form, and the
implicit symmetric operator [[0, A], [A^T, 0]] built on top of it.
"""

import logging

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import LinearOperator

from hubrank.src.rank.proc.common_util.util import ParameterError

logger = logging.getLogger(__name__)


def _freeze(matrix):
    for arr in (matrix.data, matrix.indices, matrix.indptr):
        arr.flags.writeable = False
    return matrix


class DirectedGraph(object):
    """
    Immutable sparse digraph on nodes 0..n-1.

    ``forward`` stores A (row i lists the targets of edges leaving i) and
    ``reverse`` stores A^T. Both are CSR with sorted, duplicate-free rows and
    no self-loops.
    """

    def __init__(self, n, forward, weighted=False, self_loops_dropped=0,
                 duplicates_merged=0, index_base=0):

        if int(n) < 1:
            raise ParameterError("A graph needs at least one node, got n={}".format(n))

        forward = sp.csr_matrix(forward, shape=(n, n), dtype=np.float64, copy=True)
        forward.sum_duplicates()
        forward.eliminate_zeros()

        if forward.diagonal().any():
            raise ParameterError("Self-loops must be removed before building a DirectedGraph")

        reverse = forward.transpose().tocsr()
        reverse.sort_indices()

        self._n = int(n)
        self._forward = _freeze(forward)
        self._reverse = _freeze(reverse)
        self.weighted = bool(weighted)
        self.self_loops_dropped = int(self_loops_dropped)
        self.duplicates_merged = int(duplicates_merged)
        self.index_base = int(index_base)

    @classmethod
    def from_edges(cls, n, sources, targets, weights=None, index_base=0):
        """
        Build a graph from 0-based edge arrays.

        Self-loops are dropped and counted, duplicate edges have their weights
        summed (weight 1 each when unweighted).

        :param n: Node count.
        :param sources: Edge tails.
        :param targets: Edge heads.
        :param weights: Optional nonnegative weights.
        :param index_base: Base the ids were given in externally (kept for output).
        :returns: DirectedGraph
        """
        sources = np.asarray(sources, dtype=np.int64).ravel()
        targets = np.asarray(targets, dtype=np.int64).ravel()
        weighted = weights is not None
        if weighted:
            weights = np.asarray(weights, dtype=np.float64).ravel()
        else:
            weights = np.ones(sources.size, dtype=np.float64)

        if not (sources.size == targets.size == weights.size):
            raise ParameterError("Edge arrays differ in length")
        if sources.size and (min(sources.min(), targets.min()) < 0 or
                             max(sources.max(), targets.max()) >= n):
            raise ParameterError("Edge index outside [0, {})".format(n))
        if (weights < 0).any() or not np.isfinite(weights).all():
            raise ParameterError("Edge weights must be finite and nonnegative")

        loops = sources == targets
        self_loops = int(loops.sum())
        if self_loops:
            logger.warning("Dropped {} self-loop(s)".format(self_loops))
            keep = ~loops
            sources, targets, weights = sources[keep], targets[keep], weights[keep]

        unique = np.unique(sources * n + targets).size if sources.size else 0
        duplicates = int(sources.size - unique)
        if duplicates:
            logger.warning("Merged {} duplicate edge(s)".format(duplicates))

        forward = sp.coo_matrix((weights, (sources, targets)), shape=(n, n))

        return cls(n, forward, weighted=weighted, self_loops_dropped=self_loops,
                   duplicates_merged=duplicates, index_base=index_base)

    @property
    def n(self):
        return self._n

    @property
    def m(self):
        return self._forward.nnz

    @property
    def forward(self):
        return self._forward

    @property
    def reverse(self):
        return self._reverse

    def out_degrees(self):
        return np.diff(self._forward.indptr)

    def in_degrees(self):
        return np.diff(self._reverse.indptr)

    def weighted_out_degrees(self):
        return np.asarray(self._forward.sum(axis=1)).ravel()

    def weighted_in_degrees(self):
        return np.asarray(self._reverse.sum(axis=1)).ravel()

    def max_weight(self):
        return float(self._forward.data.max()) if self.m else 0.0

    def edges(self):
        """
        Yield (source, target, weight) in row-major order.
        """
        indptr, indices, data = self._forward.indptr, self._forward.indices, self._forward.data
        for i in range(self._n):
            for pos in range(indptr[i], indptr[i + 1]):
                yield i, int(indices[pos]), float(data[pos])

    def reversed(self):
        """
        :returns: The graph with every edge turned around.
        """
        return DirectedGraph(self._n, self._reverse, weighted=self.weighted,
                             index_base=self.index_base)

    def to_dense(self):
        return self._forward.toarray()

    def __repr__(self):
        return "DirectedGraph(n={}, m={}, weighted={})".format(self._n, self.m, self.weighted)


class BipartiteOperator(LinearOperator):
    """
    Symmetric operator of dimension 2n acting as
    (x_top, x_bot) -> (A x_bot, A^T x_top).

    Hub slots are 0..n-1, authority slots are n..2n-1.
    """

    def __init__(self, graph):
        self.graph = graph
        super().__init__(dtype=np.float64, shape=(2 * graph.n, 2 * graph.n))

    @property
    def dim(self):
        return self.shape[0]

    def _matvec(self, x):
        x = np.asarray(x, dtype=np.float64).ravel()
        n = self.graph.n
        return np.concatenate((self.graph.forward @ x[n:], self.graph.reverse @ x[:n]))

    def _rmatvec(self, x):
        return self._matvec(x)

    def _adjoint(self):
        return self

    def norm_bound(self):
        """
        Gershgorin bound on the spectrum: the largest weighted degree of any
        node of the bipartite graph.
        """
        if not self.graph.m:
            return 0.0
        return float(max(self.graph.weighted_out_degrees().max(),
                         self.graph.weighted_in_degrees().max()))

    def to_sparse(self):
        return sp.bmat([[None, self.graph.forward], [self.graph.reverse, None]],
                       format="csr", dtype=np.float64)

    def to_dense(self):
        return self.to_sparse().toarray()


def degrees(g):
    """
    :param g: DirectedGraph
    :returns: (out_degrees, in_degrees) as integer arrays.
    """
    return g.out_degrees(), g.in_degrees()


def bipartite_operator(g):
    """
    :param g: DirectedGraph
    :returns: Read-only BipartiteOperator view of g.
    """
    return BipartiteOperator(g)


def spmv(g, x, transpose=False):
    """
    Sparse product A x, or A^T x when ``transpose`` is set.

    Rows are accumulated in index order so the result is reproducible.

    :raises ParameterError: when len(x) != n.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (g.n,):
        raise ParameterError("Vector of shape {} does not match n={}".format(x.shape, g.n))
    matrix = g.reverse if transpose else g.forward
    return matrix @ x
