"""
Eigenvalues and squared first eigenvector components of a Jacobi matrix,
i.e. the nodes and weights of the associated Gauss rule.
"""

import math

import numpy as np

from hubrank.src.rank.proc.common_util.util import NumericalError

MAX_SWEEPS = 30


def tridiag_eigen(J):
    """
    Implicit QL with Wilkinson shifts, rotating only the first row of the
    eigenvector matrix.

    :param J: JacobiMatrix of order p.
    :returns: (nodes ascending, weights) with weights summing to 1.
    :raises NumericalError: if an eigenvalue fails to converge.
    """
    d = np.array(J.alpha, dtype=np.float64)
    p = d.size
    e = np.zeros(p)
    e[:p - 1] = J.beta
    z = np.zeros(p)
    z[0] = 1.0

    eps = np.finfo(np.float64).eps

    for l in range(p):
        sweeps = 0
        while True:
            m = l
            while m < p - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= eps * dd:
                    break
                m += 1
            if m == l:
                break

            if sweeps == MAX_SWEEPS:
                raise NumericalError("Tridiagonal eigensolver did not converge for eigenvalue {}".format(l))
            sweeps += 1

            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            shift = 0.0
            underflow = False

            i = m - 1
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= shift
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - shift
                r = (d[i] - g) * s + 2.0 * c * b
                shift = s * r
                d[i + 1] = g + shift
                g = c * r - b

                f = z[i + 1]
                z[i + 1] = s * z[i] + c * f
                z[i] = c * z[i] - s * f
                i -= 1

            if underflow:
                continue
            d[l] -= shift
            e[l] = g
            e[m] = 0.0

    order = np.argsort(d, kind="stable")
    weights = z[order] ** 2

    return d[order], weights / weights.sum()
