"""
Matrix exponential kernels: a dense scaling-and-squaring Pade evaluation
and the action e^A v of a sparse adjacency matrix on a vector.
"""

import logging

import numpy as np

from hubrank.src.rank.proc.common_util.util import NumericalError, ParameterError
from hubrank.src.rank.proc.constants import constants

logger = logging.getLogger(__name__)

# Diagonal Pade numerator coefficients per degree.
PADE_COEFFICIENTS = {
    3: (120., 60., 12., 1.),
    5: (30240., 15120., 3360., 420., 30., 1.),
    7: (17297280., 8648640., 1995840., 277200., 25200., 1512., 56., 1.),
    9: (17643225600., 8821612800., 2075673600., 302702400., 30270240.,
        2162160., 110880., 3960., 90., 1.),
    13: (64764752532480000., 32382376266240000., 7771770303897600.,
         1187353796428800., 129060195264000., 10559470521600.,
         670442572800., 33522128640., 1323241920., 40840800., 960960.,
         16380., 182., 1.),
}

# Largest 1-norm for which each degree is accurate to unit roundoff.
THETA = {
    3: 1.495585217958292e-2,
    5: 2.539398330063230e-1,
    7: 9.504178996162932e-1,
    9: 2.097847961257068,
    13: 5.371920351148152,
}

TAYLOR_MAX_TERMS = 55


def one_norm(a):
    return float(np.max(np.sum(np.abs(a), axis=0))) if a.size else 0.0


def _pade_low(a, ident, degree):
    b = PADE_COEFFICIENTS[degree]
    a2 = a @ a
    powers = [ident, a2]
    while len(powers) < (degree + 1) // 2:
        powers.append(powers[-1] @ a2)
    u = a @ sum(b[2 * k + 1] * powers[k] for k in range(len(powers)))
    v = sum(b[2 * k] * powers[k] for k in range(len(powers)))
    return u, v


def _pade13(a, ident):
    b = PADE_COEFFICIENTS[13]
    a2 = a @ a
    a4 = a2 @ a2
    a6 = a2 @ a4
    u = a @ (a6 @ (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident)
    v = a6 @ (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident
    return u, v


def _expm_pade(a):
    size = a.shape[0]
    ident = np.eye(size)
    norm = one_norm(a)

    for degree in (3, 5, 7, 9):
        if norm <= THETA[degree]:
            u, v = _pade_low(a, ident, degree)
            return np.linalg.solve(v - u, v + u)

    scale = max(0, int(np.ceil(np.log2(norm / THETA[13])))) if norm > 0 else 0
    a = a * (2.0 ** -scale)
    u, v = _pade13(a, ident)
    r = np.linalg.solve(v - u, v + u)
    for _ in range(scale):
        r = r @ r

    return r


def _expm_eigh(a):
    values, vectors = np.linalg.eigh(a)
    return (vectors * np.exp(values)) @ vectors.T


def dense_expm(M, method="pade", threshold=constants.DENSE_THRESHOLD):
    """
    e^M for a dense square matrix.

    :param M: square array.
    :param method: 'pade' (scaling and squaring, any matrix) or 'eigh'
        (symmetric input only).
    :param threshold: largest admissible dimension.
    :returns: ndarray
    :raises ParameterError: non-square input, dimension above threshold or
        'eigh' on a nonsymmetric matrix.
    :raises NumericalError: non-finite input or result.
    """
    a = np.asarray(M, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ParameterError("dense_expm needs a square matrix, got shape {}".format(a.shape))
    if a.shape[0] > threshold:
        raise ParameterError("Dimension {} exceeds the dense threshold {}".format(a.shape[0], threshold))
    if not np.isfinite(a).all():
        raise NumericalError("dense_expm input holds non-finite entries")

    if method == "eigh":
        if not np.array_equal(a, a.T):
            raise ParameterError("The eigendecomposition path needs a symmetric matrix")
        result = _expm_eigh(a)
    elif method == "pade":
        result = _expm_pade(a)
    else:
        raise ParameterError("Unknown dense_expm method: {}".format(method))

    if not np.isfinite(result).all():
        raise NumericalError("Matrix exponential overflowed")

    return result


def expm_action(g, v, transpose=False, tol=2.0 ** -53, threshold=constants.DENSE_THRESHOLD):
    """
    e^A v (or e^{A^T} v) by scaled truncated Taylor steps: with
    s = ceil(||A||_1) the operator A/s has 1-norm at most 1 and each of the s
    steps sums the series until two consecutive terms are negligible.

    Graphs with n <= threshold go through dense_expm instead.

    :param g: DirectedGraph
    :param v: vector of length n.
    :param transpose: act with A^T.
    :returns: ndarray of length n.
    """
    v = np.asarray(v, dtype=np.float64)
    if v.shape != (g.n,):
        raise ParameterError("Vector of shape {} does not match n={}".format(v.shape, g.n))
    if not np.isfinite(v).all():
        raise NumericalError("expm_action input holds non-finite entries")

    if g.n <= threshold:
        a = g.to_dense()
        return dense_expm(a.T if transpose else a, threshold=threshold) @ v

    return taylor_expm_action(g.reverse if transpose else g.forward, v, tol=tol)


def taylor_expm_action(a, v, tol=2.0 ** -53):
    """
    Sparse core of expm_action.

    :param a: sparse n x n matrix.
    :param v: vector.
    """
    norm = float(abs(a).sum(axis=0).max()) if a.nnz else 0.0
    steps = max(1, int(np.ceil(norm)))

    f = v.copy()
    b = v.copy()
    for _ in range(steps):
        c1 = np.linalg.norm(b, np.inf)
        for j in range(TAYLOR_MAX_TERMS):
            b = (a @ b) / float(steps * (j + 1))
            c2 = np.linalg.norm(b, np.inf)
            f = f + b
            if c1 + c2 <= tol * np.linalg.norm(f, np.inf):
                break
            c1 = c2
        else:
            logger.warning("Taylor series hit {} terms without meeting tolerance".format(TAYLOR_MAX_TERMS))
        b = f

    if not np.isfinite(f).all():
        raise NumericalError("Exponential action overflowed")

    return f
