"""
Cross-method comparison and spectral diagnostics of a graph.
"""

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from hubrank.src.rank.proc.common_util.util import ParameterError
from hubrank.src.rank.proc.constants import constants
from hubrank.src.rank.proc.graph.directed_graph import bipartite_operator
from hubrank.src.rank.proc.linalg.expm import dense_expm
from hubrank.src.rank.proc.linalg.lanczos import LanczosProcess
from hubrank.src.rank.proc.linalg.power import power_singular_pair
from hubrank.src.rank.proc.linalg.tridiagonal import tridiag_eigen

logger = logging.getLogger(__name__)

DEGENERATE = "degenerate: HITS scores depend on the start vector"
NARROW = "small gap: divergence from the exponential ranking expected"
MODERATE = "moderate gap"
WIDE = "wide gap: HITS close to the exponential ranking"


@dataclass(frozen=True)
class ComparisonReport:
    method_a: str
    method_b: str
    kendall_tau_b: float
    overlap_at_k: dict = field(default_factory=dict)
    top_a: dict = field(default_factory=dict)
    top_b: dict = field(default_factory=dict)


@dataclass(frozen=True)
class GapReport:
    sigma1: float
    sigma2: float
    relative_gap: float
    annotation: str
    converged: bool = True

    @property
    def degenerate(self):
        return self.annotation == DEGENERATE


@dataclass(frozen=True, eq=False)
class RitzSpectrum:
    values: np.ndarray
    counts: np.ndarray
    edges: np.ndarray


def _slot_weights(table, k):
    """
    Share of the first k slots held by each node; a tie group straddling
    slot k splits the remaining slots evenly between its members.
    """
    weights = np.zeros(len(table))
    position = 0
    for group in table.groups:
        slots = min(len(group), max(0, k - position))
        if slots == 0:
            break
        weights[list(group)] = slots / len(group)
        position += len(group)
    return weights


def overlap_at_k(a, b, k):
    if not 1 <= k <= len(a):
        raise ParameterError("k = {} must lie in [1, {}]".format(k, len(a)))
    return float(np.minimum(_slot_weights(a, k), _slot_weights(b, k)).sum() / k)


def kendall_tau_b(a, b):
    tau, _ = stats.kendalltau(a.ranks, b.ranks)
    if np.isnan(tau):
        # No untied pair on at least one side.
        return 1.0 if a.same_ranking(b) else 0.0
    return float(tau)


def compare(a, b, ks=(10,)):
    """
    :param a, b: RankTables over the same node set.
    :param ks: cut-offs for the overlap.
    :returns: ComparisonReport
    """
    if len(a) != len(b):
        raise ParameterError("Rank tables cover different node sets ({} vs {} nodes)".format(len(a), len(b)))

    ks = sorted(set(min(int(k), len(a)) for k in ks))
    return ComparisonReport(
        method_a=a.source.method,
        method_b=b.source.method,
        kendall_tau_b=kendall_tau_b(a, b),
        overlap_at_k={k: overlap_at_k(a, b, k) for k in ks},
        top_a={k: a.top(k) for k in ks},
        top_b={k: b.top(k) for k in ks},
    )


def spectral_gap(g, tol=constants.TOL):
    """
    sigma_1, sigma_2 of A and the relative gap, with an informational note on
    how far HITS can be trusted to agree with exponential centrality.
    """
    if g.m == 0:
        raise ParameterError("The spectral gap needs a graph with at least one edge")

    estimate = power_singular_pair(g, tol=tol)
    gap = estimate.relative_gap()

    if estimate.is_degenerate(tol):
        annotation = DEGENERATE
    elif gap < constants.GAP_NARROW:
        annotation = NARROW
    elif gap >= constants.GAP_WIDE:
        annotation = WIDE
    else:
        annotation = MODERATE

    return GapReport(estimate.sigma1, estimate.sigma2, gap, annotation, estimate.converged)


def symmetry_fraction(g):
    """
    Fraction of edges (i, j) whose reverse (j, i) is also an edge.
    """
    if g.m == 0:
        return 0.0
    pattern = g.forward.astype(bool).astype(np.int8)
    return float(pattern.multiply(pattern.T).nnz / g.m)


def estrada_index(g, method="svd", threshold=constants.DENSE_THRESHOLD):
    """
    Tr(e^M) of the bipartite operator, 2 sum_i cosh(sigma_i).

    :param method: 'svd' (singular values of A) or 'expm' (trace of the
        dense exponential).
    """
    if 2 * g.n > threshold:
        raise ParameterError("Estrada index needs 2n <= {}, got {}".format(threshold, 2 * g.n))

    if method == "svd":
        sigma = np.linalg.svd(g.to_dense(), compute_uv=False)
        return float(2.0 * np.cosh(sigma).sum())
    if method == "expm":
        return float(np.trace(dense_expm(bipartite_operator(g).to_dense(), threshold=threshold)))
    raise ParameterError("Unknown Estrada index method: {}".format(method))


def ritz_histogram(g, p=constants.PMAX, bins=20):
    """
    Ritz values of p Lanczos steps on the bipartite operator from the
    normalised all-ones vector, and their histogram.

    :returns: RitzSpectrum
    """
    if p < 1 or bins < 1:
        raise ParameterError("p and bins must be >= 1")

    op = bipartite_operator(g)
    process = LanczosProcess(op, np.ones(op.dim))
    process.extend(p)
    values, _ = tridiag_eigen(process.jacobi())
    counts, edges = np.histogram(values, bins=bins)
    logger.debug("{} Ritz values in [{:.6g}, {:.6g}]".format(values.size, values.min(), values.max()))

    return RitzSpectrum(values, counts, edges)
