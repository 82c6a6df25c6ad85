"""
Walk-count scores that need a parameter or a matrix function of A itself:
Katz row/column sums, the bipartite resolvent and row/column sums of e^A.
"""

import logging

import numpy as np

from hubrank.src.rank.proc.common_util.util import NumericalError, ParameterError
from hubrank.src.rank.proc.constants import constants
from hubrank.src.rank.proc.constants.constants import FunctionKind, Side
from hubrank.src.rank.proc.linalg.expm import expm_action
from hubrank.src.rank.proc.linalg.power import power_singular_pair, spectral_radius
from hubrank.src.rank.proc.quadrature.gauss import MatrixFunction
from hubrank.src.rank.proc.rankers.exponential import quadrature_centrality
from hubrank.src.rank.proc.rankers.scores import ScoreVector

logger = logging.getLogger(__name__)

KATZ_RESIDUAL_TOL = 1e-10
KATZ_MAX_ITER = 100000
RESOLVENT_MODES = ("auto", "dense", "quadrature")


def _katz_fixed_point(matrix, c, max_iter):
    """
    y <- 1 + c M y until ||(I - cM) y - 1||_inf <= tol ||y||_inf. The
    residual of the current iterate is exactly the next update's size.
    """
    ones = np.ones(matrix.shape[0])
    y = ones.copy()
    residual = np.inf
    for iteration in range(1, max_iter + 1):
        update = ones + c * (matrix @ y)
        residual = np.abs(update - y).max()
        y = update
        if not np.isfinite(y).all():
            raise NumericalError("Katz iteration diverged (c = {:.6g})".format(c))
        if residual <= KATZ_RESIDUAL_TOL * np.abs(y).max():
            return y, iteration, residual
    raise NumericalError("Katz iteration did not reach the residual tolerance in {} steps "
                         "(residual {:.3e})".format(max_iter, residual))


def katz_row_col(g, c=None, max_iter=KATZ_MAX_ITER, offset=constants.KATZ_OFFSET,
                 radius_max_iter=constants.RADIUS_MAX_ITER):
    """
    Hub scores y with (I - cA) y = 1 and authority scores x with
    (I - cA^T) x = 1.

    :param c: defaults to 1 / (rho(A) + offset).
    :raises ParameterError: if c <= 0, or c >= 1/rho(A) with rho from a
        converged iteration. Past an unconverged bound the fixed point
        itself diverges (NumericalError).
    """
    radius = spectral_radius(g, max_iter=radius_max_iter)

    if c is None:
        c = 1.0 / (radius.value + offset)
    elif c <= 0:
        raise ParameterError("Katz parameter c must be > 0, got {}".format(c))
    elif radius.converged and c * radius.value >= 1.0:
        raise ParameterError("Katz parameter c = {:.6g} must be below 1/rho(A) = {:.6g}".format(
            c, 1.0 / radius.value))

    hub, hub_iterations, hub_residual = _katz_fixed_point(g.forward, c, max_iter)
    authority, auth_iterations, auth_residual = _katz_fixed_point(g.reverse, c, max_iter)

    parameters = {"c": c}
    diagnostics = {"rho": radius.value, "rho_converged": radius.converged, "nilpotent": radius.nilpotent}
    return (ScoreVector("katz", Side.HUB, hub, dict(parameters),
                        dict(diagnostics, iterations=hub_iterations, residual=float(hub_residual))),
            ScoreVector("katz", Side.AUTHORITY, authority, dict(parameters),
                        dict(diagnostics, iterations=auth_iterations, residual=float(auth_residual))))


def _resolvent_dense(g, c):
    a = g.to_dense()
    identity = np.eye(g.n)
    hub = np.diag(np.linalg.solve(identity - c * c * (a @ a.T), identity))
    authority = np.diag(np.linalg.solve(identity - c * c * (a.T @ a), identity))
    return hub, authority


def resolvent_bipartite(g, c=None, mode="auto", threshold=constants.DENSE_THRESHOLD,
                        fraction=constants.RESOLVENT_FRACTION, **kwargs):
    """
    Diagonals of (I - c^2 A A^T)^{-1} (hubs) and (I - c^2 A^T A)^{-1}
    (authorities), the diagonal blocks of (I - cM)^{-1} for the bipartite
    operator M.

    :param c: defaults to fraction / sigma_1 (1 for an edgeless graph).
    :param mode: 'dense', 'quadrature' or 'auto' (dense while 2n fits
        under threshold).
    :param kwargs: passed to the quadrature run (p_max, width_tol, threads).
    """
    if mode not in RESOLVENT_MODES:
        raise ParameterError("Unknown resolvent mode: {}".format(mode))

    sigma1 = power_singular_pair(g).sigma1
    if c is None:
        c = fraction / sigma1 if sigma1 > 0 else 1.0
    elif c <= 0:
        raise ParameterError("Resolvent parameter c must be > 0, got {}".format(c))
    elif c * sigma1 >= 1.0:
        raise ParameterError("Resolvent parameter c = {:.6g} must be below 1/sigma_1 = {:.6g}".format(
            c, 1.0 / sigma1))

    if mode == "auto":
        mode = "dense" if 2 * g.n <= threshold else "quadrature"

    parameters = {"c": c, "mode": mode}
    diagnostics = {"sigma1": sigma1}

    if mode == "dense":
        hub, authority = _resolvent_dense(g, c)
        return (ScoreVector("resolvent", Side.HUB, hub, dict(parameters), dict(diagnostics)),
                ScoreVector("resolvent", Side.AUTHORITY, authority, dict(parameters), dict(diagnostics)))

    f = MatrixFunction(FunctionKind.RESOLVENT, c)
    result = quadrature_centrality(g, f, "resolvent", **kwargs)
    for sv in result.values():
        sv.parameters.update(parameters)
        sv.diagnostics.update(diagnostics)
    return result[Side.HUB], result[Side.AUTHORITY]


def expA_row_col_sums(g, threshold=constants.DENSE_THRESHOLD):
    """
    Hub scores e^A 1 and authority scores e^{A^T} 1.
    """
    ones = np.ones(g.n)
    return (ScoreVector("expA", Side.HUB, expm_action(g, ones, threshold=threshold)),
            ScoreVector("expA", Side.AUTHORITY, expm_action(g, ones, transpose=True, threshold=threshold)))
