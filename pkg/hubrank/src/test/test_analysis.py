# encoding: utf-8
"""
Rank comparison and spectral diagnostics.
"""
__author__ = 'hubrank developers'
__date__ = '18 Oct 2026'
__license__ = 'BSD - see LICENSE file in top-level package directory'

import math
import unittest

import numpy as np

from hubrank.src.rank.proc import analysis
from hubrank.src.rank.proc.common_util.util import ParameterError
from hubrank.src.rank.proc.constants.constants import Side
from hubrank.src.rank.proc.quadrature.gauss import spectrum_interval
from hubrank.src.rank.proc.rankers.exponential import exp_centrality_exact
from hubrank.src.rank.proc.rankers.link_analysis import hits
from hubrank.src.rank.proc.rankers.scores import ScoreVector, rank_table
from hubrank.src.test import graphs


def table(scores, method="test"):
    return rank_table(ScoreVector(method, Side.HUB, scores))


class TestCompare(unittest.TestCase):

    def test_identical(self):
        a = table([4.0, 3.0, 2.0, 1.0])
        report = analysis.compare(a, a, ks=(1, 2))
        self.assertEqual(report.kendall_tau_b, 1.0)
        self.assertEqual(report.overlap_at_k, {1: 1.0, 2: 1.0})

    def test_reversed(self):
        report = analysis.compare(table([1.0, 2.0, 3.0, 4.0]), table([4.0, 3.0, 2.0, 1.0]), ks=(2,))
        self.assertAlmostEqual(report.kendall_tau_b, -1.0, places=12)
        self.assertEqual(report.overlap_at_k[2], 0.0)

    def test_exponential_against_hits(self):
        g = graphs.example_1()
        _, exp_authority = exp_centrality_exact(g)
        _, hits_authority = hits(g)
        report = analysis.compare(rank_table(exp_authority), rank_table(hits_authority), ks=(1, 4))
        self.assertAlmostEqual(report.kendall_tau_b, 1.0, places=12)
        self.assertEqual(report.overlap_at_k[4], 1.0)
        self.assertEqual(report.top_a[1], (1,))
        self.assertEqual((report.method_a, report.method_b), ("exp-exact", "hits"))

    def test_tie_straddling_the_cut(self):
        a = table([3.0, 2.0, 2.0, 1.0])
        b = table([3.0, 2.0, 1.0, 0.0])
        self.assertAlmostEqual(analysis.overlap_at_k(a, b, 2), 0.75, places=12)

    def test_constant_tables(self):
        a = table([1.0, 1.0, 1.0])
        self.assertEqual(analysis.kendall_tau_b(a, a), 1.0)
        self.assertEqual(analysis.kendall_tau_b(a, table([3.0, 2.0, 1.0])), 0.0)

    def test_ks_are_clipped(self):
        a = table([2.0, 1.0])
        self.assertEqual(list(analysis.compare(a, a, ks=(1, 10)).overlap_at_k), [1, 2])

    def test_size_mismatch(self):
        with self.assertRaises(ParameterError):
            analysis.compare(table([1.0, 2.0]), table([1.0, 2.0, 3.0]))
        with self.assertRaises(ParameterError):
            analysis.overlap_at_k(table([1.0, 2.0]), table([1.0, 2.0]), 3)


class TestSpectralGap(unittest.TestCase):

    def test_example_2_is_degenerate(self):
        report = analysis.spectral_gap(graphs.example_2())
        self.assertTrue(report.degenerate)
        self.assertAlmostEqual(report.relative_gap, 0.0, places=8)
        self.assertEqual(report.annotation, analysis.DEGENERATE)

    def test_example_1(self):
        g = graphs.example_1()
        report = analysis.spectral_gap(g)
        sigma = np.linalg.svd(g.to_dense(), compute_uv=False)
        self.assertAlmostEqual(report.relative_gap, (sigma[0] - sigma[1]) / sigma[0], delta=1e-6)
        self.assertFalse(report.degenerate)

    def test_annotation_thresholds(self):
        for g in graphs.random_suite(10):
            report = analysis.spectral_gap(g)
            if report.degenerate:
                continue
            if report.relative_gap < 0.05:
                self.assertEqual(report.annotation, analysis.NARROW)
            elif report.relative_gap >= 0.15:
                self.assertEqual(report.annotation, analysis.WIDE)
            else:
                self.assertEqual(report.annotation, analysis.MODERATE)

    def test_edgeless(self):
        with self.assertRaises(ParameterError):
            analysis.spectral_gap(graphs.edgeless(3))


class TestGraphSummaries(unittest.TestCase):

    def test_symmetry_fraction(self):
        self.assertEqual(analysis.symmetry_fraction(graphs.two_cycle()), 1.0)
        self.assertEqual(analysis.symmetry_fraction(graphs.path(4)), 0.0)
        self.assertAlmostEqual(analysis.symmetry_fraction(graphs.example_1()), 4 / 7, places=12)
        self.assertEqual(analysis.symmetry_fraction(graphs.edgeless(2)), 0.0)

    def test_estrada_index(self):
        self.assertAlmostEqual(analysis.estrada_index(graphs.edgeless(3)), 6.0, places=12)
        self.assertAlmostEqual(analysis.estrada_index(graphs.two_cycle()), 4 * math.cosh(1.0), places=12)

        g = graphs.example_1()
        hub, authority = exp_centrality_exact(g)
        by_svd = analysis.estrada_index(g)
        self.assertAlmostEqual(by_svd / analysis.estrada_index(g, method="expm"), 1.0, places=10)
        self.assertAlmostEqual(by_svd / (hub.scores.sum() + authority.scores.sum()), 1.0, places=10)

        with self.assertRaises(ParameterError):
            analysis.estrada_index(g, method="lanczos")
        with self.assertRaises(ParameterError):
            analysis.estrada_index(g, threshold=4)

    def test_ritz_histogram(self):
        ritz = analysis.ritz_histogram(graphs.two_cycle(), p=10, bins=4)
        np.testing.assert_allclose(ritz.values, [1.0])
        self.assertEqual(ritz.counts.sum(), 1)

        g = graphs.random_suite(1)[0]
        ritz = analysis.ritz_histogram(g, p=12, bins=5)
        b = spectrum_interval(g).b
        self.assertLessEqual(ritz.values.size, 12)
        self.assertEqual(ritz.counts.sum(), ritz.values.size)
        self.assertTrue((np.abs(ritz.values) <= b + 1e-9).all())

        with self.assertRaises(ParameterError):
            analysis.ritz_histogram(g, p=0)


if __name__ == '__main__':
    unittest.main()
