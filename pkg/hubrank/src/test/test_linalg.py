# encoding: utf-8
"""
Dense and sparse exponentials, Lanczos, the tridiagonal eigensolver and the
power iterations.
"""
__author__ = 'hubrank developers'
__date__ = '18 Oct 2026'
__license__ = 'BSD - see LICENSE file in top-level package directory'

import math
import unittest

import numpy as np
import scipy.linalg

from hubrank.src.rank.proc.common_util.util import ParameterError
from hubrank.src.rank.proc.graph.directed_graph import bipartite_operator
from hubrank.src.rank.proc.linalg.expm import dense_expm, expm_action, taylor_expm_action
from hubrank.src.rank.proc.linalg.lanczos import JacobiMatrix, LanczosProcess, lanczos
from hubrank.src.rank.proc.linalg.power import is_acyclic, power_singular_pair, spectral_radius
from hubrank.src.rank.proc.linalg.tridiagonal import tridiag_eigen
from hubrank.src.test import graphs


class TestDenseExpm(unittest.TestCase):

    def test_against_scipy(self):
        rng = np.random.default_rng(7)
        # Norms spanning every Pade degree and the scaling branch.
        for scale in (1e-3, 0.1, 1.0, 3.0, 20.0):
            a = rng.standard_normal((12, 12))
            a *= scale / np.abs(a).sum(axis=0).max()
            expected = scipy.linalg.expm(a)
            np.testing.assert_allclose(dense_expm(a), expected, rtol=0,
                                       atol=1e-11 * np.abs(expected).max())

    def test_nilpotent_path(self):
        a = graphs.path(6).to_dense()
        result = dense_expm(a)
        for i in range(6):
            for j in range(6):
                expected = 1.0 / math.factorial(j - i) if j >= i else 0.0
                self.assertAlmostEqual(result[i, j], expected, places=12)

    def test_eigh_matches_pade_on_symmetric(self):
        m = bipartite_operator(graphs.example_1()).to_dense()
        np.testing.assert_allclose(dense_expm(m, method="eigh"), dense_expm(m), rtol=1e-12, atol=1e-12)

    def test_inverse_and_symmetry(self):
        rng = np.random.default_rng(5)
        for scale in (0.5, 1.0, 3.0):
            a = rng.standard_normal((10, 10))
            m = a + a.T
            m *= scale / np.abs(m).sum(axis=0).max()
            result = dense_expm(m)
            np.testing.assert_allclose(result @ dense_expm(-m), np.eye(10), rtol=0, atol=1e-10)
            np.testing.assert_allclose(result, result.T, rtol=0, atol=1e-12 * np.abs(result).max())

        for g in graphs.random_suite(5):
            m = bipartite_operator(g).to_dense()
            result = dense_expm(m)
            np.testing.assert_allclose(result, result.T, rtol=0, atol=1e-12 * np.abs(result).max())

    def test_zero_matrix(self):
        np.testing.assert_array_equal(dense_expm(np.zeros((3, 3))), np.eye(3))

    def test_rejected(self):
        with self.assertRaises(ParameterError):
            dense_expm(np.zeros((2, 3)))
        with self.assertRaises(ParameterError):
            dense_expm(np.zeros((5, 5)), threshold=4)
        with self.assertRaises(ParameterError):
            dense_expm(np.triu(np.ones((3, 3))), method="eigh")
        with self.assertRaises(ParameterError):
            dense_expm(np.zeros((2, 2)), method="taylor")


class TestExpmAction(unittest.TestCase):

    def test_path_row_sums(self):
        g = graphs.path(3)
        ones = np.ones(3)
        np.testing.assert_allclose(expm_action(g, ones), [2.5, 2.0, 1.0], rtol=1e-14)
        np.testing.assert_allclose(expm_action(g, ones, transpose=True), [1.0, 2.0, 2.5], rtol=1e-14)

    def test_sparse_path_matches_dense(self):
        for g in graphs.random_suite(10):
            v = np.linspace(1.0, 2.0, g.n)
            expected = expm_action(g, v)
            sparse = expm_action(g, v, threshold=0)
            np.testing.assert_allclose(sparse, expected, rtol=1e-10)

    def test_taylor_on_zero_matrix(self):
        g = graphs.edgeless(4)
        v = np.arange(4.0)
        np.testing.assert_array_equal(taylor_expm_action(g.forward, v), v)

    def test_length_mismatch(self):
        with self.assertRaises(ParameterError):
            expm_action(graphs.path(3), np.ones(2))


class TestLanczos(unittest.TestCase):

    def test_two_cycle_breaks_down(self):
        J, breakdown = lanczos(bipartite_operator(graphs.two_cycle()), 0, 10)
        self.assertTrue(breakdown)
        np.testing.assert_allclose(J.alpha, [0.0, 0.0], atol=1e-15)
        np.testing.assert_allclose(J.beta, [1.0])

    def test_edgeless_breaks_down_at_once(self):
        op = bipartite_operator(graphs.edgeless(3))
        J, breakdown = lanczos(op, 1, 5, scale=0.0)
        self.assertTrue(breakdown)
        self.assertEqual(J.p, 1)
        self.assertEqual(J.alpha[0], 0.0)

    def test_basis_is_orthonormal_and_tridiagonalises(self):
        for g in graphs.random_suite(10):
            op = bipartite_operator(g)
            process = LanczosProcess(op, np.eye(op.dim)[0])
            process.extend(12)
            q = process.basis()
            p = q.shape[1]

            np.testing.assert_allclose(q.T @ q, np.eye(p), atol=1e-10)
            projected = q.T @ op.to_dense() @ q
            np.testing.assert_allclose(projected, process.jacobi().to_dense(), atol=1e-10 * op.norm_bound())

    def test_extend_is_incremental(self):
        op = bipartite_operator(graphs.random_suite(1)[0])
        start = np.eye(op.dim)[2]
        step_by_step = LanczosProcess(op, start)
        for p in range(1, 7):
            step_by_step.extend(p)
        at_once = LanczosProcess(op, start)
        at_once.extend(6)
        np.testing.assert_allclose(step_by_step.jacobi().alpha, at_once.jacobi().alpha, atol=1e-13)
        np.testing.assert_allclose(step_by_step.jacobi().beta, at_once.jacobi().beta, atol=1e-13)

    def test_rejected(self):
        op = bipartite_operator(graphs.example_1())
        with self.assertRaises(ParameterError):
            lanczos(op, 8, 3)
        with self.assertRaises(ParameterError):
            lanczos(op, 0, 0)
        with self.assertRaises(ParameterError):
            LanczosProcess(op, np.zeros(8))


class TestTridiagonal(unittest.TestCase):

    def test_against_scipy(self):
        rng = np.random.default_rng(3)
        for p in (2, 5, 20):
            alpha = rng.standard_normal(p)
            beta = rng.uniform(0.1, 1.0, p - 1)
            nodes, weights = tridiag_eigen(JacobiMatrix(alpha, beta))

            values, vectors = scipy.linalg.eigh_tridiagonal(alpha, beta)
            np.testing.assert_allclose(nodes, values, atol=1e-12)
            np.testing.assert_allclose(weights, vectors[0] ** 2, atol=1e-12)
            self.assertAlmostEqual(weights.sum(), 1.0, places=14)

    def test_nodes_interlace_the_leading_submatrix(self):
        rng = np.random.default_rng(9)
        for p in (2, 3, 8, 16):
            J = JacobiMatrix(rng.standard_normal(p), rng.uniform(0.1, 1.0, p - 1))
            nodes, _ = tridiag_eigen(J)
            inner, _ = tridiag_eigen(J.leading(p - 1))
            slack = 1e-12 * max(1.0, np.abs(nodes).max())
            self.assertTrue((nodes[:-1] <= inner + slack).all())
            self.assertTrue((inner <= nodes[1:] + slack).all())

    def test_order_one(self):
        nodes, weights = tridiag_eigen(JacobiMatrix([0.5], []))
        np.testing.assert_array_equal(nodes, [0.5])
        np.testing.assert_array_equal(weights, [1.0])

    def test_jacobi_validation(self):
        with self.assertRaises(ParameterError):
            JacobiMatrix([], [])
        with self.assertRaises(ParameterError):
            JacobiMatrix([1.0, 2.0], [])
        with self.assertRaises(ParameterError):
            JacobiMatrix([1.0, 2.0], [0.0])


class TestPowerIterations(unittest.TestCase):

    def test_example_1_singular_values(self):
        g = graphs.example_1()
        estimate = power_singular_pair(g)
        sigma = np.linalg.svd(g.to_dense(), compute_uv=False)
        self.assertTrue(estimate.converged)
        self.assertAlmostEqual(estimate.sigma1, sigma[0], places=8)
        self.assertAlmostEqual(estimate.sigma1 ** 2, 3.9563, delta=5e-4)
        self.assertAlmostEqual(estimate.sigma2, sigma[1], places=6)
        self.assertFalse(estimate.is_degenerate(1e-10))

    def test_example_2_is_degenerate(self):
        estimate = power_singular_pair(graphs.example_2())
        self.assertAlmostEqual(estimate.sigma1, math.sqrt(2), places=8)
        self.assertAlmostEqual(estimate.sigma2, math.sqrt(2), places=8)
        self.assertTrue(estimate.is_degenerate(1e-6))
        self.assertLess(estimate.relative_gap(), 1e-6)

    def test_sigma_1_bounds_the_ritz_values(self):
        for g in graphs.random_suite(10):
            estimate = power_singular_pair(g)
            if not estimate.converged:
                continue
            op = bipartite_operator(g)
            for node in (0, g.n):
                J, _ = lanczos(op, node, 12)
                nodes, _ = tridiag_eigen(J)
                self.assertLessEqual(np.abs(nodes).max(), estimate.sigma1 * (1 + 1e-8))

    def test_edgeless(self):
        estimate = power_singular_pair(graphs.edgeless(3))
        self.assertEqual((estimate.sigma1, estimate.sigma2), (0.0, 0.0))
        self.assertEqual(estimate.relative_gap(), 0.0)

    def test_spectral_radius(self):
        for g in [graphs.example_1(), graphs.two_cycle()] + graphs.random_suite(5):
            radius = spectral_radius(g)
            expected = np.abs(np.linalg.eigvals(g.to_dense())).max()
            if radius.converged:
                self.assertAlmostEqual(radius.value, expected, places=6)
            else:
                self.assertGreaterEqual(radius.value, expected - 1e-9)

    def test_two_cycle_radius(self):
        radius = spectral_radius(graphs.two_cycle())
        self.assertTrue(radius.converged)
        self.assertAlmostEqual(radius.value, 1.0, places=12)

    def test_acyclic_graph_is_nilpotent(self):
        g = graphs.path(5)
        self.assertTrue(is_acyclic(g))
        self.assertFalse(is_acyclic(graphs.example_1()))

        radius = spectral_radius(g)
        self.assertTrue(radius.nilpotent)
        self.assertFalse(radius.converged)
        self.assertGreaterEqual(radius.value, 0.0)


if __name__ == '__main__':
    unittest.main()
