"""
Classical link-analysis baselines: HITS, PageRank / Reverse PageRank and
degree counts.
"""

import logging

import numpy as np

from hubrank.src.rank.proc.common_util.util import NumericalError, ParameterError
from hubrank.src.rank.proc.constants import constants
from hubrank.src.rank.proc.constants.constants import Side
from hubrank.src.rank.proc.linalg.power import power_singular_pair
from hubrank.src.rank.proc.rankers.scores import ScoreVector

logger = logging.getLogger(__name__)


def _unit(vector, what):
    norm = np.linalg.norm(vector)
    if norm == 0:
        raise NumericalError("HITS {} vector vanished; the start vector has no component on any edge".format(what))
    return vector / norm


def hits(g, tol=constants.TOL, max_iter=constants.MAX_ITER, init=None):
    """
    Alternating iteration x <- A^T y, y <- A x with 2-norm normalisation,
    started from a constant authority vector unless ``init`` is given.

    Reported scores are rescaled to sum to 1. The 'degenerate' flag is set
    when sigma_1 - sigma_2 < tol * sigma_1, in which case the limit depends
    on the start vector.

    :param g: DirectedGraph with at least one edge.
    :param tol: bound on the sup-norm change between sweeps.
    :param max_iter: sweep cap; the last iterate is returned, flagged.
    :param init: optional nonnegative authority start vector.
    :returns: (hub, authority) ScoreVectors.
    """
    n = g.n
    if g.m == 0:
        raise ParameterError("HITS needs a graph with at least one edge")

    if init is None:
        x = np.ones(n) / np.sqrt(n)
    else:
        x = np.asarray(init, dtype=np.float64)
        if x.shape != (n,) or (x < 0).any():
            raise ParameterError("HITS start vector must be nonnegative with length {}".format(n))
        x = _unit(x, "start")

    y = _unit(g.forward @ x, "hub")

    converged = False
    change = np.inf
    iterations = 0
    for iterations in range(1, max_iter + 1):
        x_new = _unit(g.reverse @ y, "authority")
        y_new = _unit(g.forward @ x_new, "hub")
        change = max(np.abs(x_new - x).max(), np.abs(y_new - y).max())
        x, y = x_new, y_new
        if change < tol:
            converged = True
            break

    if not converged:
        logger.warning("HITS did not converge in {} sweeps (change {:.3e})".format(max_iter, change))

    estimate = power_singular_pair(g, tol=tol)
    degenerate = estimate.is_degenerate(tol)
    if degenerate:
        logger.warning("HITS: dominant singular value is degenerate, scores depend on the start vector")

    diagnostics = {
        "iterations": iterations,
        "residual": float(change),
        "converged": converged,
        "degenerate": bool(degenerate),
        "sigma1": estimate.sigma1,
        "sigma2": estimate.sigma2,
    }
    parameters = {"tol": tol, "max_iter": max_iter, "init": "constant" if init is None else "given"}

    return (ScoreVector("hits", Side.HUB, y / y.sum(), dict(parameters), dict(diagnostics)),
            ScoreVector("hits", Side.AUTHORITY, x / x.sum(), dict(parameters), dict(diagnostics)))


def pagerank(g, alpha=constants.PAGERANK_ALPHA, tol=constants.TOL, max_iter=constants.MAX_ITER, reverse=False):
    """
    Stationary vector of alpha P + (1 - alpha) e e^T / n, where P is the
    row-stochastic link matrix with dangling rows replaced by e^T / n.
    Power iteration on the transposed action; the rank-one terms are never
    formed.

    :param reverse: run on the edge-reversed graph (Reverse PageRank, a hub
        score).
    :returns: ScoreVector (authority side, hub side when reversed).
    """
    if not 0 < alpha < 1:
        raise ParameterError("alpha must lie in (0, 1), got {}".format(alpha))

    graph = g.reversed() if reverse else g
    n = graph.n
    out = graph.weighted_out_degrees()
    dangling = out == 0
    inverse = np.divide(1.0, out, out=np.zeros(n), where=~dangling)

    rank = np.ones(n) / n
    converged = False
    change = np.inf
    iterations = 0
    for iterations in range(1, max_iter + 1):
        leak = alpha * rank[dangling].sum() + (1.0 - alpha)
        new = alpha * (graph.reverse @ (rank * inverse)) + leak / n
        change = np.abs(new - rank).sum()
        rank = new
        if change < tol:
            converged = True
            break

    if not converged:
        logger.warning("PageRank did not converge in {} iterations (change {:.3e})".format(max_iter, change))

    rank = rank / rank.sum()
    method = "reverse-pagerank" if reverse else "pagerank"
    side = Side.HUB if reverse else Side.AUTHORITY

    return ScoreVector(method, side, rank,
                       parameters={"alpha": alpha, "tol": tol, "max_iter": max_iter},
                       diagnostics={"iterations": iterations, "residual": float(change),
                                    "converged": converged, "dangling": int(dangling.sum())})


def degree_scores(g):
    """
    :returns: (hub = out-degrees, authority = in-degrees)
    """
    return (ScoreVector("degree", Side.HUB, g.out_degrees()),
            ScoreVector("degree", Side.AUTHORITY, g.in_degrees()))
