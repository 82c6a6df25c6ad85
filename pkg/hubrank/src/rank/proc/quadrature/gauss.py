"""
Gauss, Gauss-Radau and Gauss-Lobatto rules for quadratic forms
e_i^T f(M) e_i and bilinear forms e_u^T f(M) e_v of a symmetric operator M,
built from the Jacobi matrix a Lanczos run produces.

Only functions whose derivatives are all positive on the spectrum are
accepted (exp, and the resolvent 1/(1 - c t) below its pole). For those the
Gauss rule and the Radau rule with the node at the left end of the spectrum
give lower bounds; the Radau rule with the node at the right end and the
Lobatto rule give upper bounds.
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_banded

from hubrank.src.rank.proc.common_util.util import NumericalError, ParameterError
from hubrank.src.rank.proc.constants import constants
from hubrank.src.rank.proc.constants.constants import FunctionKind
from hubrank.src.rank.proc.graph.directed_graph import bipartite_operator
from hubrank.src.rank.proc.linalg.lanczos import JacobiMatrix, LanczosProcess
from hubrank.src.rank.proc.linalg.power import power_singular_pair
from hubrank.src.rank.proc.linalg.tridiagonal import tridiag_eigen

logger = logging.getLogger(__name__)

# A prescribed node closer than this (relative to b - a) to a Ritz value
# counts as a collision.
COLLISION_TOL = 1e-10
COLLISION_SHIFT = 1e-8


@dataclass(frozen=True)
class MatrixFunction:
    kind: FunctionKind
    c: float = None

    def __post_init__(self):
        if self.kind is FunctionKind.RESOLVENT and not (self.c is not None and self.c > 0):
            raise ParameterError("The resolvent needs a parameter c > 0, got {}".format(self.c))

    def __call__(self, t):
        t = np.asarray(t, dtype=np.float64)
        if self.kind is FunctionKind.EXP:
            return np.exp(t)
        return 1.0 / (1.0 - self.c * t)

    def pole(self):
        return None if self.kind is FunctionKind.EXP else 1.0 / self.c

    def check_nodes(self, nodes):
        pole = self.pole()
        if pole is not None and np.max(nodes) >= pole:
            raise ParameterError(
                "Resolvent pole 1/c = {:.6g} lies inside the node range [{:.6g}, {:.6g}]; c is too large".format(
                    pole, np.min(nodes), np.max(nodes)))

    def __str__(self):
        return "exp" if self.kind is FunctionKind.EXP else "resolvent(c={:.6g})".format(self.c)


EXP = MatrixFunction(FunctionKind.EXP)


def function_for(tag, c=None):
    """
    :param tag: 'exp', 'resolvent' or a FunctionKind.
    :returns: MatrixFunction
    :raises ParameterError: for any other function.
    """
    if isinstance(tag, MatrixFunction):
        return tag
    try:
        kind = tag if isinstance(tag, FunctionKind) else FunctionKind[str(tag).upper()]
    except KeyError:
        raise ParameterError("Bounds are only available for exp and resolvent, not {}".format(tag))
    return EXP if kind is FunctionKind.EXP else MatrixFunction(kind, c)


@dataclass(frozen=True)
class SpectrumInterval:
    a: float
    b: float

    def __post_init__(self):
        if not self.a <= self.b:
            raise ParameterError("Spectrum interval needs a <= b, got [{}, {}]".format(self.a, self.b))

    @property
    def width(self):
        return self.b - self.a


@dataclass(frozen=True)
class NodeBounds:
    node: int
    lower: float
    upper: float
    p: int
    exact: bool

    @property
    def width(self):
        return self.upper - self.lower

    @property
    def midpoint(self):
        return 0.5 * (self.lower + self.upper)


def spectrum_interval(g, estimate=None):
    """
    Symmetric interval [-b, b] holding the spectrum of the bipartite
    operator: b = min(1.01 sigma_1, Gershgorin bound). An unconverged
    sigma_1 estimate is not trusted and leaves the Gershgorin bound alone.

    :param g: DirectedGraph
    :param estimate: optional SpectralEstimate already computed for g.
    :returns: SpectrumInterval
    """
    gershgorin = bipartite_operator(g).norm_bound()
    if g.m == 0:
        return SpectrumInterval(0.0, 0.0)

    estimate = estimate or power_singular_pair(g)
    b = gershgorin
    if estimate.converged:
        b = min((1 + constants.SPECTRUM_PADDING) * estimate.sigma1, gershgorin)

    return SpectrumInterval(-b, b)


def interval_below_pole(iv, f, sigma1):
    """
    Pull the right end of iv below the pole of f. The spectrum
    [-sigma_1, sigma_1] still fits when sigma_1 < 1/c, so b moves to the
    midpoint of sigma_1 and the pole; the interval stays symmetric.

    :returns: SpectrumInterval
    """
    pole = f.pole()
    if pole is None or iv.b < pole:
        return iv
    b = 0.5 * (sigma1 + pole)
    logger.info("Spectrum bound {:.6g} reaches the pole {:.6g} of {}; using {:.6g}".format(iv.b, pole, f, b))
    return SpectrumInterval(-b, b)


def gauss_estimate(J, f=EXP):
    """
    e_1^T f(J) e_1 = sum_j w_j f(t_j).

    :param J: JacobiMatrix
    :param f: MatrixFunction
    """
    nodes, weights = tridiag_eigen(J)
    f.check_nodes(nodes)
    return float(weights @ f(nodes))


def _tridiagonal_solve(J, shift, rhs):
    p = J.p
    banded = np.zeros((3, p))
    banded[0, 1:] = J.beta
    banded[1, :] = J.alpha - shift
    banded[2, :-1] = J.beta
    return solve_banded((1, 1), banded, rhs)


def _clear_of_ritz_values(ritz, tau, iv):
    return np.min(np.abs(ritz - tau)) > COLLISION_TOL * max(iv.width, 1.0)


def _prescribed(J, tau, iv, outward, ritz=None):
    """
    Move tau outward once if it collides with a Ritz value of J.

    :param ritz: eigenvalues of J when the caller already has them.
    """
    if ritz is None:
        ritz, _ = tridiag_eigen(J)
    if _clear_of_ritz_values(ritz, tau, iv):
        return tau
    moved = tau + outward * COLLISION_SHIFT * max(iv.width, 1.0)
    logger.info("Prescribed node {:.6g} collides with a Ritz value, moved to {:.6g}".format(tau, moved))
    if not _clear_of_ritz_values(ritz, moved, iv):
        raise NumericalError("Prescribed node {:.6g} collides with a Ritz value".format(tau))
    return moved


def radau_matrix(J, gamma, tau, iv, outward, ritz=None):
    """
    Order p+1 Jacobi matrix whose spectrum contains tau: append gamma to the
    off-diagonal and tau + delta_p to the diagonal, where
    (J - tau I) delta = gamma^2 e_p.
    """
    tau = _prescribed(J, tau, iv, outward, ritz)
    rhs = np.zeros(J.p)
    rhs[-1] = gamma * gamma
    delta = _tridiagonal_solve(J, tau, rhs)
    if not np.isfinite(delta).all():
        raise NumericalError("Radau modification produced non-finite values")
    return JacobiMatrix(np.append(J.alpha, tau + delta[-1]), np.append(J.beta, gamma))


def lobatto_matrix(J, iv):
    """
    Order p+1 Jacobi matrix whose spectrum contains both a and b.
    """
    ritz, _ = tridiag_eigen(J)
    a = _prescribed(J, iv.a, iv, -1.0, ritz)
    b = _prescribed(J, iv.b, iv, 1.0, ritz)
    rhs = np.zeros(J.p)
    rhs[-1] = 1.0
    delta = _tridiagonal_solve(J, a, rhs)[-1]
    mu = _tridiagonal_solve(J, b, rhs)[-1]

    psi2 = (b - a) / (delta - mu)
    if not (np.isfinite(psi2) and psi2 > 0):
        raise NumericalError("Lobatto modification failed (psi^2 = {})".format(psi2))
    omega = a + psi2 * delta
    return JacobiMatrix(np.append(J.alpha, omega), np.append(J.beta, np.sqrt(psi2)))


def unit_start(op, node):
    dim = op.shape[0]
    if not 0 <= node < dim:
        raise ParameterError("Node {} outside [0, {})".format(node, dim))
    start = np.zeros(dim)
    start[node] = 1.0
    return start


def bracket(process, node, p, iv, f=EXP):
    """
    Radau bracket from an existing Lanczos run, extended to order p.

    :returns: NodeBounds
    """
    process.extend(p)
    J = process.jacobi(p)

    if process.is_exact(p):
        value = gauss_estimate(J, f)
        return NodeBounds(node, value, value, J.p, True)

    gamma = process.residual_norm(p)
    ritz, _ = tridiag_eigen(J)
    lower = gauss_estimate(radau_matrix(J, gamma, iv.a, iv, -1.0, ritz), f)
    upper = gauss_estimate(radau_matrix(J, gamma, iv.b, iv, 1.0, ritz), f)

    return NodeBounds(node, min(lower, upper), max(lower, upper), J.p, False)


def radau_bounds(op, node, p, iv, f=EXP):
    """
    Lower and upper Gauss-Radau bounds on e_node^T f(op) e_node after p
    Lanczos steps.

    :param op: symmetric operator (BipartiteOperator or matrix).
    :param node: index in [0, dim).
    :param p: Lanczos steps, >= 1.
    :param iv: SpectrumInterval holding the spectrum of op.
    :param f: MatrixFunction
    :returns: NodeBounds, exact when Lanczos broke down.
    """
    if p < 1:
        raise ParameterError("p must be >= 1, got {}".format(p))
    process = LanczosProcess(op, unit_start(op, node), scale=iv.b or None)
    return bracket(process, node, p, iv, f)


def lobatto_bound(op, node, p, iv, f=EXP):
    """
    Gauss-Lobatto upper bound on e_node^T f(op) e_node after p Lanczos steps.
    """
    if p < 1:
        raise ParameterError("p must be >= 1, got {}".format(p))
    process = LanczosProcess(op, unit_start(op, node), scale=iv.b or None)
    process.extend(p)
    J = process.jacobi(p)

    if process.is_exact(p):
        return gauss_estimate(J, f)

    return gauss_estimate(lobatto_matrix(J, iv), f)


def bilinear_estimate(op, u_node, v_node, p, f=EXP, scale=None):
    """
    Gauss estimate of e_u^T f(op) e_v through
    1/4 [q(e_u + e_v) - q(e_u - e_v)], q(w) = w^T f(op) w.

    :param op: symmetric operator.
    :param u_node, v_node: distinct indices.
    :param p: Lanczos steps per quadratic form.
    """
    if u_node == v_node:
        raise ParameterError("bilinear_estimate needs two distinct nodes")

    forms = []
    for sign in (1.0, -1.0):
        w = unit_start(op, u_node) + sign * unit_start(op, v_node)
        process = LanczosProcess(op, w, scale=scale)
        process.extend(p)
        forms.append(2.0 * gauss_estimate(process.jacobi(p), f))

    return 0.25 * (forms[0] - forms[1])
