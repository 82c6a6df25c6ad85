"""
Power iterations: the two leading singular values of A and the Perron root.
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy.sparse.csgraph import connected_components

from hubrank.src.rank.proc.constants import constants

logger = logging.getLogger(__name__)

DEFLATION_SEED = 0


@dataclass(frozen=True)
class SpectralEstimate:
    sigma1: float
    sigma2: float
    iterations: int
    converged: bool
    residual: float

    def relative_gap(self):
        if self.sigma1 == 0:
            return 0.0
        return min(1.0, max(0.0, (self.sigma1 - self.sigma2) / self.sigma1))

    def is_degenerate(self, tol):
        return self.sigma1 - self.sigma2 < tol * self.sigma1


@dataclass(frozen=True)
class RadiusEstimate:
    """
    Perron root estimate. ``converged`` is False when ``value`` is the
    conservative fallback bound instead of an iterated estimate.
    """
    value: float
    converged: bool
    iterations: int
    nilpotent: bool = False


def _sine(u, v):
    """
    Sine of the angle between unit vectors, from the component of v
    orthogonal to u; sqrt(1 - cos^2) cannot resolve angles below 1e-8.
    """
    return float(np.linalg.norm(v - (u @ v) * u))


def _power_gram(g, x, tol, max_iter, deflate=None):
    """
    Normalised power iteration on A^T A, optionally keeping x orthogonal to
    ``deflate``.

    :returns: (x, sigma, iterations, converged, residual)
    """
    def project(y):
        if deflate is not None:
            y = y - (deflate @ y) * deflate
        return y

    x = project(x)
    norm = np.linalg.norm(x)
    if norm == 0:
        return x, 0.0, 0, True, 0.0
    x = x / norm

    residual = np.inf
    for iteration in range(1, max_iter + 1):
        y = project(g.reverse @ (g.forward @ x))
        norm = np.linalg.norm(y)
        if norm == 0:
            return x, 0.0, iteration, True, 0.0
        y = y / norm
        residual = _sine(x, y)
        x = y
        if residual < tol:
            return x, float(np.linalg.norm(g.forward @ x)), iteration, True, residual

    return x, float(np.linalg.norm(g.forward @ x)), max_iter, False, residual


def power_singular_pair(g, tol=constants.TOL, max_iter=constants.MAX_ITER):
    """
    sigma_1 by power iteration on A^T A from the normalised ones vector;
    sigma_2 by the same iteration deflated against the converged right
    singular vector, started from a fixed-seed vector so an exactly
    orthogonal start cannot hide a repeated sigma_1.

    :param g: DirectedGraph
    :param tol: threshold on the sine of the angle between iterates.
    :param max_iter: iteration cap per singular value.
    :returns: SpectralEstimate
    """
    n = g.n
    if g.m == 0:
        return SpectralEstimate(0.0, 0.0, 0, True, 0.0)

    v1, sigma1, it1, conv1, res1 = _power_gram(g, np.ones(n) / np.sqrt(n), tol, max_iter)

    if n == 1:
        return SpectralEstimate(sigma1, 0.0, it1, conv1, res1)

    start = np.random.default_rng(DEFLATION_SEED).random(n) + 0.5
    _, sigma2, it2, conv2, res2 = _power_gram(g, start, tol, max_iter, deflate=v1)

    if not (conv1 and conv2):
        logger.warning("Singular value power iteration stopped at max_iter={} (residuals {:.2e}, {:.2e})".format(
            max_iter, res1, res2))

    sigma2 = min(sigma2, sigma1)
    return SpectralEstimate(sigma1, sigma2, it1 + it2, conv1 and conv2, max(res1, res2))


def radius_fallback(g, sigma1=None):
    """
    min(max out-degree * max weight, sigma_1): both bound the Perron root.
    """
    if g.m == 0:
        return 0.0
    bound = float(g.out_degrees().max()) * g.max_weight()
    if sigma1 is None:
        sigma1 = power_singular_pair(g).sigma1
    return min(bound, sigma1)


def is_acyclic(g):
    """
    A nonnegative matrix is nilpotent exactly when its graph has no cycle.
    """
    if g.m == 0:
        return True
    count, _ = connected_components(g.forward, directed=True, connection="strong")
    return count == g.n


def spectral_radius(g, tol=constants.TOL, max_iter=constants.RADIUS_MAX_ITER):
    """
    Perron root of A by power iteration with 1-norm normalisation on A + I
    (the shift keeps periodic graphs from oscillating; rho = ||(A+I)x||_1 - 1).

    Acyclic graphs are nilpotent; they, and runs that fail to converge, get
    the conservative fallback bound with ``converged`` False.

    :returns: RadiusEstimate
    """
    n = g.n
    if g.m == 0:
        return RadiusEstimate(0.0, True, 0, nilpotent=True)

    if is_acyclic(g):
        logger.info("Graph is acyclic, A is nilpotent; using the fallback bound")
        return RadiusEstimate(radius_fallback(g), False, 0, nilpotent=True)

    x = np.ones(n) / n
    rho = 0.0
    for iteration in range(1, max_iter + 1):
        y = g.forward @ x + x
        total = y.sum()
        y = y / total
        previous, rho = rho, total - 1.0
        change = np.abs(y - x).sum()
        x = y
        if abs(rho - previous) <= tol * max(1.0, rho) and change <= np.sqrt(tol):
            return RadiusEstimate(float(rho), True, iteration)

    logger.warning("Perron root iteration did not converge in {} steps; using the fallback bound".format(max_iter))
    return RadiusEstimate(radius_fallback(g), False, max_iter)
