"""
Exponential hub and authority centrality: diagonal entries of the
exponential of the bipartite operator [[0, A], [A^T, 0]].

Hub i lives at bipartite index i, authority i at index n + i. The diagonal
blocks of the exponential are cosh(sqrt(A A^T)) and cosh(sqrt(A^T A)); the
off-diagonal block is U sinh(Sigma) V^T for A = U Sigma V^T.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace

import numpy as np
from scipy.sparse.linalg import svds, ArpackNoConvergence

from hubrank.src.rank.proc.common_util.util import NumericalError, ParameterError
from hubrank.src.rank.proc.constants import constants
from hubrank.src.rank.proc.constants.constants import Side
from hubrank.src.rank.proc.graph.directed_graph import bipartite_operator
from hubrank.src.rank.proc.linalg.expm import dense_expm
from hubrank.src.rank.proc.linalg.lanczos import LanczosProcess
from hubrank.src.rank.proc.linalg.power import power_singular_pair
from hubrank.src.rank.proc.quadrature.gauss import (
    EXP,
    bilinear_estimate,
    bracket,
    interval_below_pole,
    spectrum_interval,
    unit_start
)
from hubrank.src.rank.proc.rankers.scores import ScoreVector

logger = logging.getLogger(__name__)

COMMUNICABILITY_KINDS = ("hub", "authority", "hub_authority")


def _check_dense(g, threshold):
    if 2 * g.n > threshold:
        raise ParameterError("Bipartite dimension {} exceeds the dense threshold {}".format(2 * g.n, threshold))


def bipartite_exponential(g, threshold=constants.DENSE_THRESHOLD):
    """
    :returns: dense e^M for the bipartite operator M of g.
    """
    _check_dense(g, threshold)
    return dense_expm(bipartite_operator(g).to_dense(), threshold=threshold)


def exp_centrality_exact(g, threshold=constants.DENSE_THRESHOLD):
    """
    :param g: DirectedGraph with 2n <= threshold.
    :returns: (hub, authority) ScoreVectors.
    """
    expm = bipartite_exponential(g, threshold)
    diagonal = np.diag(expm)
    n = g.n
    diagnostics = {"trace": float(diagonal.sum())}

    hub = ScoreVector("exp-exact", Side.HUB, diagonal[:n], diagnostics=dict(diagnostics))
    authority = ScoreVector("exp-exact", Side.AUTHORITY, diagonal[n:], diagnostics=dict(diagnostics))
    return hub, authority


def bipartite_exponential_blocks(g, threshold=constants.DENSE_THRESHOLD):
    """
    The blocks of the bipartite exponential from the SVD A = U Sigma V^T.

    :returns: (cosh(sqrt(A A^T)), cosh(sqrt(A^T A)), U sinh(Sigma) V^T)
    """
    _check_dense(g, threshold)
    u, s, vt = np.linalg.svd(g.to_dense())
    hub_block = (u * np.cosh(s)) @ u.T
    authority_block = (vt.T * np.cosh(s)) @ vt
    off_block = (u * np.sinh(s)) @ vt
    return hub_block, authority_block, off_block


class QuadratureRun(object):
    """
    Per-node Gauss-Radau brackets on the bipartite operator, refined on the
    p schedule p_start, p_start + p_step, ... until each bracket is narrow
    enough, exact, or p_max is reached.
    """

    def __init__(self, g, f=EXP, p_max=constants.PMAX, width_tol=constants.WIDTH_TOL,
                 p_start=constants.TOPK_P_START, p_step=constants.TOPK_P_STEP, threads=1):
        if p_max < 1 or p_start < 1 or p_step < 1:
            raise ParameterError("p_max, p_start and p_step must all be >= 1")
        if width_tol <= 0:
            raise ParameterError("width_tol must be > 0, got {}".format(width_tol))
        if threads < 1:
            raise ParameterError("threads must be >= 1, got {}".format(threads))

        self.graph = g
        self.op = bipartite_operator(g)
        estimate = power_singular_pair(g)
        self.iv = interval_below_pole(spectrum_interval(g, estimate), f, estimate.sigma1)
        self.f = f
        self.p_max = p_max
        self.width_tol = width_tol
        self.p_start = min(p_start, p_max)
        self.p_step = p_step
        self.threads = threads

    def resolved(self, bounds):
        return bounds.exact or bounds.width <= self.width_tol * max(1.0, abs(bounds.lower))

    def node_bounds(self, index):
        process = LanczosProcess(self.op, unit_start(self.op, index), scale=self.iv.b or None)
        p = self.p_start
        while True:
            bounds = bracket(process, index, p, self.iv, self.f)
            if self.resolved(bounds) or p >= self.p_max:
                return bounds
            p = min(p + self.p_step, self.p_max)

    def run(self, indices):
        indices = list(indices)
        if self.threads == 1:
            return [self.node_bounds(i) for i in indices]
        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            return list(pool.map(self.node_bounds, indices))


def _side_vector(method, side, bounds, run, parameters):
    unresolved = [b.node for b in bounds if not run.resolved(b)]
    if unresolved:
        logger.warning("{} {} scores: {} bracket(s) wider than width_tol at p_max={}".format(
            method, side.name.lower(), len(unresolved), run.p_max))
    diagnostics = {
        "bounds": bounds,
        "iterations": [b.p for b in bounds],
        "max_iterations": max(b.p for b in bounds),
        "unresolved": unresolved,
        "interval": (run.iv.a, run.iv.b),
    }
    return ScoreVector(method, side, [b.midpoint for b in bounds],
                       parameters=dict(parameters), diagnostics=diagnostics)


def quadrature_centrality(g, f=EXP, method="exp-quad", sides=(Side.HUB, Side.AUTHORITY), **kwargs):
    """
    Midpoints of Gauss-Radau brackets for the requested sides.

    :returns: dict Side -> ScoreVector
    """
    run = QuadratureRun(g, f=f, **kwargs)
    parameters = {"p_max": run.p_max, "width_tol": run.width_tol, "function": str(f)}
    n = g.n
    result = {}
    for side in sides:
        offset = 0 if side is Side.HUB else n
        bounds = run.run(range(offset, offset + n))
        # Report graph node ids, not bipartite indices.
        bounds = [replace(b, node=b.node - offset) for b in bounds]
        result[side] = _side_vector(method, side, bounds, run, parameters)
    return result


def exp_centrality_quadrature(g, p_max=constants.PMAX, width_tol=constants.WIDTH_TOL, threads=1, **kwargs):
    """
    :returns: (hub, authority) ScoreVectors with per-node NodeBounds in
        diagnostics['bounds'].
    """
    result = quadrature_centrality(g, EXP, "exp-quad", p_max=p_max, width_tol=width_tol,
                                   threads=threads, **kwargs)
    return result[Side.HUB], result[Side.AUTHORITY]


def _leading_triplets(g, count, threshold):
    """
    The ``count`` largest singular triplets of A, descending.
    """
    n = g.n
    if 2 * n <= threshold or count >= n:
        _check_dense(g, threshold)
        u, s, vt = np.linalg.svd(g.to_dense())
        return u[:, :count], s[:count], vt[:count]

    try:
        u, s, vt = svds(g.forward, k=count, v0=np.ones(n) / np.sqrt(n))
    except ArpackNoConvergence as ex:
        raise NumericalError("Singular triplet solver did not converge: {}".format(ex))
    order = np.argsort(-s, kind="stable")
    return u[:, order], s[order], vt[order]


def truncated_spectral_scores(g, k, tol=constants.TOL, threshold=constants.DENSE_THRESHOLD):
    """
    Diagonal of the k leading terms sum e^{lambda_i} x_i x_i^T of the
    bipartite exponential. Eigenpairs come from singular triplets of A:
    lambda = +sigma with x = (u, v)/sqrt(2) and lambda = -sigma with
    x = (u, -v)/sqrt(2), taken in decreasing order of lambda.

    :param k: number of terms, 1 <= k <= 2n.
    :returns: (hub, authority) ScoreVectors.
    """
    n = g.n
    if not 1 <= k <= 2 * n:
        raise ParameterError("k must lie in [1, {}], got {}".format(2 * n, k))

    positive = min(k, n)
    u, s, vt = _leading_triplets(g, n if k > n else positive, threshold)

    hub = 0.5 * (u[:, :positive] ** 2) @ np.exp(s[:positive])
    authority = 0.5 * (vt[:positive].T ** 2) @ np.exp(s[:positive])

    if k > n:
        # Negative eigenvalues -sigma_n, ..., in decreasing order.
        extra = k - n
        tail = np.arange(n - 1, n - 1 - extra, -1)
        hub += 0.5 * (u[:, tail] ** 2) @ np.exp(-s[tail])
        authority += 0.5 * (vt[tail].T ** 2) @ np.exp(-s[tail])

    if s.size >= 2:
        degenerate = bool(s[0] - s[1] < tol * s[0])
    else:
        estimate = power_singular_pair(g, tol=tol)
        degenerate = estimate.is_degenerate(tol)

    diagnostics = {"degenerate": degenerate, "sigma": [float(x) for x in s[:2]]}
    if degenerate:
        logger.warning("sigma_1 is (near) degenerate; the leading term is not unique")

    parameters = {"k": k}
    return (ScoreVector("truncated", Side.HUB, hub, parameters=dict(parameters), diagnostics=dict(diagnostics)),
            ScoreVector("truncated", Side.AUTHORITY, authority, parameters=dict(parameters),
                        diagnostics=dict(diagnostics)))


def communicability(g, i, j, kind="hub", mode="dense", p=constants.PMAX, threshold=constants.DENSE_THRESHOLD):
    """
    Entry of the bipartite exponential between two roles:
    'hub' -> (i, j), 'authority' -> (n+i, n+j), 'hub_authority' -> (i, n+j).

    :param mode: 'dense' or 'quadrature' (polarised Gauss estimate with p
        Lanczos steps).
    """
    n = g.n
    if kind not in COMMUNICABILITY_KINDS:
        raise ParameterError("Unknown communicability kind: {}".format(kind))
    if not (0 <= i < n and 0 <= j < n):
        raise ParameterError("Nodes ({}, {}) outside [0, {})".format(i, j, n))
    if kind != "hub_authority" and i == j:
        raise ParameterError("{} communicability needs two distinct nodes".format(kind))

    row = i if kind != "authority" else n + i
    col = j if kind == "hub" else n + j

    if mode == "dense":
        return float(bipartite_exponential(g, threshold)[row, col])
    if mode == "quadrature":
        op = bipartite_operator(g)
        return bilinear_estimate(op, row, col, p, EXP, scale=spectrum_interval(g).b or None)
    raise ParameterError("Unknown communicability mode: {}".format(mode))
