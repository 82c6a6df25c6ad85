"""
Lanczos tridiagonalization of a symmetric operator with full
reorthogonalization. A ``LanczosProcess`` keeps its basis so callers can
extend the run step by step instead of restarting.
"""

import logging
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import aslinearoperator

from hubrank.src.rank.proc.common_util.util import ParameterError
from hubrank.src.rank.proc.constants import constants

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class JacobiMatrix:
    """
    Symmetric tridiagonal matrix with diagonal ``alpha`` (length p) and
    strictly positive off-diagonal ``beta`` (length p-1).
    """
    alpha: np.ndarray
    beta: np.ndarray

    def __post_init__(self):
        alpha = np.array(self.alpha, dtype=np.float64).ravel()
        beta = np.array(self.beta, dtype=np.float64).ravel()
        if alpha.size < 1:
            raise ParameterError("A Jacobi matrix needs order p >= 1")
        if beta.size != alpha.size - 1:
            raise ParameterError("Off-diagonal of length {} does not fit order {}".format(beta.size, alpha.size))
        if (beta <= 0).any():
            raise ParameterError("Off-diagonal entries must be strictly positive")
        alpha.flags.writeable = False
        beta.flags.writeable = False
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    @property
    def p(self):
        return self.alpha.size

    def leading(self, p):
        """
        :returns: The leading order-p principal submatrix.
        """
        return JacobiMatrix(self.alpha[:p], self.beta[:p - 1])

    def to_dense(self):
        return np.diag(self.alpha) + np.diag(self.beta, 1) + np.diag(self.beta, -1)


def _scale_of(op):
    """
    Norm estimate used to make breakdown detection scale-invariant.
    """
    if hasattr(op, "norm_bound"):
        return op.norm_bound()
    if sp.issparse(op):
        return float(abs(op).sum(axis=1).max()) if op.shape[0] else 0.0
    if isinstance(op, np.ndarray):
        return float(np.abs(op).sum(axis=1).max()) if op.size else 0.0
    return 1.0


class LanczosProcess(object):
    """
    Incremental Lanczos run on a symmetric operator.

    :param op: symmetric matrix, sparse matrix or LinearOperator.
    :param start: start vector (normalised internally).
    :param scale: spectral scale for breakdown detection; the operator's
        Gershgorin bound when not given.
    """

    def __init__(self, op, start, scale=None):

        start = np.asarray(start, dtype=np.float64).ravel()
        norm = np.linalg.norm(start)
        if norm == 0 or not np.isfinite(norm):
            raise ParameterError("Lanczos start vector must be finite and nonzero")

        if scale is None:
            scale = _scale_of(op)

        self.op = aslinearoperator(op)
        self.dim = self.op.shape[0]
        if start.size != self.dim:
            raise ParameterError("Start vector of length {} for operator of dimension {}".format(start.size, self.dim))

        self.breakdown_tol = constants.BREAKDOWN_FACTOR * scale
        self.breakdown = False

        self._basis = np.zeros((self.dim, 8))
        self._basis[:, 0] = start / norm
        self._alpha = []
        self._beta = []

    @property
    def steps(self):
        return len(self._alpha)

    def _grow(self):
        grown = np.zeros((self.dim, 2 * self._basis.shape[1]))
        grown[:, :self._basis.shape[1]] = self._basis
        self._basis = grown

    def extend(self, p):
        """
        Run until ``p`` steps are stored or the Krylov space is exhausted.

        :returns: number of steps stored.
        """
        while self.steps < p and not self.breakdown:
            j = self.steps
            q = self._basis[:, j]

            w = self.op.matvec(q)
            a = float(q @ w)
            self._alpha.append(a)

            w = w - a * q
            if j > 0:
                w -= self._beta[j - 1] * self._basis[:, j - 1]

            # Twice is enough.
            stored = self._basis[:, :j + 1]
            for _ in range(2):
                w -= stored @ (stored.T @ w)

            b = float(np.linalg.norm(w))
            self._beta.append(b)

            if b <= self.breakdown_tol or j + 1 >= self.dim:
                self.breakdown = True
                logger.debug("Lanczos breakdown at step {} (residual {:.3e})".format(j + 1, b))
                break

            if j + 1 >= self._basis.shape[1]:
                self._grow()
            self._basis[:, j + 1] = w / b

        return self.steps

    def jacobi(self, p=None):
        """
        :returns: JacobiMatrix of order min(p, steps).
        """
        p = self.steps if p is None else min(p, self.steps)
        return JacobiMatrix(self._alpha[:p], self._beta[:p - 1])

    def residual_norm(self, p=None):
        """
        The coupling to the next Lanczos vector after step p (gamma_p).
        """
        p = self.steps if p is None else min(p, self.steps)
        return self._beta[p - 1]

    def is_exact(self, p=None):
        """
        True when the order-p Jacobi matrix already spans an invariant
        subspace, so quadrature on it is exact.
        """
        p = self.steps if p is None else min(p, self.steps)
        return self.breakdown and p >= self.steps

    def basis(self, p=None):
        p = self.steps if p is None else min(p, self.steps)
        return self._basis[:, :p].copy()


def lanczos(op, start_node, p_max, scale=None):
    """
    Lanczos from the unit vector e_{start_node}.

    :param op: symmetric operator of dimension dim.
    :param start_node: index in [0, dim).
    :param p_max: maximum order, >= 1.
    :param scale: spectral scale for the breakdown tolerance.
    :returns: (JacobiMatrix, breakdown flag)
    """
    dim = op.shape[0]
    if not 0 <= start_node < dim:
        raise ParameterError("Start node {} outside [0, {})".format(start_node, dim))
    if p_max < 1:
        raise ParameterError("p_max must be >= 1, got {}".format(p_max))

    start = np.zeros(dim)
    start[start_node] = 1.0

    process = LanczosProcess(op, start, scale=scale)
    process.extend(p_max)

    return process.jacobi(), process.breakdown
