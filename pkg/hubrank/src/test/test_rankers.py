# encoding: utf-8
"""
Every ranking method against worked examples and dense references.
"""
__author__ = 'hubrank developers'
__date__ = '18 Oct 2026'
__license__ = 'BSD - see LICENSE file in top-level package directory'

import math
import unittest

import numpy as np

from hubrank.src.rank.proc.common_util.util import NumericalError, ParameterError
from hubrank.src.rank.proc.constants.constants import Side
from hubrank.src.rank.proc.linalg.power import power_singular_pair, radius_fallback, spectral_radius
from hubrank.src.rank.proc.rankers.exponential import (
    bipartite_exponential,
    bipartite_exponential_blocks,
    exp_centrality_exact,
    truncated_spectral_scores
)
from hubrank.src.rank.proc.rankers.link_analysis import degree_scores, hits, pagerank
from hubrank.src.rank.proc.rankers.ranker_picker import RankerPicker
from hubrank.src.rank.proc.rankers.resolvent import expA_row_col_sums, katz_row_col, resolvent_bipartite
from hubrank.src.rank.proc.rankers.scores import ScoreVector, normalised_scores, rank_table, shifted
from hubrank.src.test import graphs

GOLDEN_TOL = 5e-4


def dense_pagerank(g, alpha):
    n = g.n
    a = g.to_dense()
    out = a.sum(axis=1)
    p = np.where(out[:, None] > 0, a / np.where(out > 0, out, 1.0)[:, None], 1.0 / n)
    pi = np.linalg.solve(np.eye(n) - alpha * p.T, np.full(n, (1.0 - alpha) / n))
    return pi / pi.sum()


class GoldenMixin(object):

    def assertGolden(self, scores, expected):
        self.assertEqual(len(scores), len(expected))
        for got, want in zip(scores, expected):
            self.assertAlmostEqual(got, want, delta=GOLDEN_TOL)


class TestExponential(GoldenMixin, unittest.TestCase):

    def test_example_1(self):
        hub, authority = exp_centrality_exact(graphs.example_1())
        self.assertGolden(hub.scores, [2.3319, 2.2289, 2.2812, 1.6414])
        self.assertGolden(authority.scores, [1.5906, 3.0209, 2.2796, 1.5922])
        self.assertEqual(rank_table(authority).order, (1, 2, 3, 0))

    def test_example_2(self):
        hub, authority = exp_centrality_exact(graphs.example_2())
        self.assertGolden(hub.scores, [1.5431, 2.1782, 1.5891, 1.5891])
        self.assertGolden(authority.scores, [1.5891, 2.1782, 1.5431, 1.5891])
        self.assertEqual(rank_table(hub).groups, ((1,), (2, 3), (0,)))

    def test_example_3(self):
        hub, authority = exp_centrality_exact(graphs.example_3())
        expected = [1.0, 1.6905, 1.6905, 1.6905, 1.6905, 3.7622]
        self.assertGolden(hub.scores, expected)
        self.assertGolden(authority.scores, expected[::-1])
        self.assertEqual(rank_table(hub).order[0], 5)

    def test_path_has_one_weak_end(self):
        hub, authority = exp_centrality_exact(graphs.path(4))
        self.assertEqual(rank_table(authority).groups, ((1, 2, 3), (0,)))
        self.assertEqual(rank_table(hub).groups, ((0, 1, 2), (3,)))
        self.assertAlmostEqual(authority.scores[1], math.cosh(1.0), places=12)

    def test_edgeless(self):
        hub, authority = exp_centrality_exact(graphs.edgeless(3))
        np.testing.assert_array_equal(hub.scores, np.ones(3))
        np.testing.assert_array_equal(authority.scores, np.ones(3))

    def test_blocks_and_trace(self):
        for g in graphs.random_suite():
            n = g.n
            expm = bipartite_exponential(g)
            hub_block, authority_block, off_block = bipartite_exponential_blocks(g)
            atol = 1e-10 * max(1.0, np.abs(expm).max())
            np.testing.assert_allclose(expm[:n, :n], hub_block, rtol=0, atol=atol)
            np.testing.assert_allclose(expm[n:, n:], authority_block, rtol=0, atol=atol)
            np.testing.assert_allclose(expm[:n, n:], off_block, rtol=0, atol=atol)

            sigma = np.linalg.svd(g.to_dense(), compute_uv=False)
            self.assertAlmostEqual(np.trace(expm) / (2 * np.cosh(sigma).sum()), 1.0, places=8)
            self.assertAlmostEqual(np.trace(expm[:n, :n]) / np.trace(expm[n:, n:]), 1.0, places=10)

    def test_threshold(self):
        with self.assertRaises(ParameterError):
            exp_centrality_exact(graphs.example_1(), threshold=7)


class TestTruncated(unittest.TestCase):

    def test_one_term_ranks_like_hits(self):
        g = graphs.example_1()
        hub, authority = truncated_spectral_scores(g, 1)
        hits_hub, hits_authority = hits(g)
        self.assertTrue(rank_table(hub).same_ranking(rank_table(hits_hub)))
        self.assertTrue(rank_table(authority).same_ranking(rank_table(hits_authority)))
        self.assertFalse(hub.diagnostics["degenerate"])

    def test_all_terms_give_the_exponential(self):
        for g in [graphs.example_1(), graphs.example_3()] + graphs.random_suite(5):
            hub, authority = truncated_spectral_scores(g, 2 * g.n)
            exact_hub, exact_authority = exp_centrality_exact(g)
            atol = 1e-10 * exact_hub.scores.max()
            np.testing.assert_allclose(hub.scores, exact_hub.scores, rtol=1e-9, atol=atol)
            np.testing.assert_allclose(authority.scores, exact_authority.scores, rtol=1e-9, atol=atol)

    def test_degenerate_flag(self):
        hub, _ = truncated_spectral_scores(graphs.example_2(), 1)
        self.assertTrue(hub.diagnostics["degenerate"])

    def test_k_range(self):
        with self.assertRaises(ParameterError):
            truncated_spectral_scores(graphs.example_1(), 0)
        with self.assertRaises(ParameterError):
            truncated_spectral_scores(graphs.example_1(), 9)


class TestHits(GoldenMixin, unittest.TestCase):

    def test_example_1(self):
        hub, authority = hits(graphs.example_1())
        self.assertGolden(hub.scores, [0.3383, 0.1729, 0.2798, 0.2091])
        self.assertGolden(authority.scores, [0.0965, 0.4618, 0.2854, 0.1562])
        self.assertTrue(hub.diagnostics["converged"])
        self.assertFalse(hub.diagnostics["degenerate"])
        self.assertAlmostEqual(hub.scores.sum(), 1.0, places=12)

    def test_example_2_is_degenerate(self):
        hub, authority = hits(graphs.example_2())
        self.assertGolden(hub.scores, [0.0, 0.5, 0.25, 0.25])
        self.assertGolden(authority.scores, [1 / 3, 1 / 3, 0.0, 1 / 3])
        self.assertTrue(hub.diagnostics["degenerate"])

    def test_example_3_cannot_separate(self):
        hub, authority = hits(graphs.example_3())
        self.assertGolden(hub.scores, [0.0, 0.125, 0.125, 0.125, 0.125, 0.5])
        self.assertGolden(authority.scores, [0.2, 0.2, 0.2, 0.2, 0.2, 0.0])
        self.assertEqual(rank_table(authority).groups[0], (0, 1, 2, 3, 4))

    def test_agrees_with_one_term_on_gapped_graphs(self):
        checked = 0
        for g in graphs.random_suite():
            if power_singular_pair(g).relative_gap() <= 0.05:
                continue
            hub, authority = hits(g, tol=1e-13)
            t_hub, t_authority = truncated_spectral_scores(g, 1)
            self.assertTrue(rank_table(hub).same_ranking(rank_table(t_hub)))
            self.assertTrue(rank_table(authority).same_ranking(rank_table(t_authority)))
            checked += 1
        self.assertGreater(checked, 0)

    def test_edgeless(self):
        with self.assertRaises(ParameterError):
            hits(graphs.edgeless(3))


class TestKatz(unittest.TestCase):

    def test_path(self):
        hub, authority = katz_row_col(graphs.path(3), c=0.5)
        np.testing.assert_allclose(hub.scores, [1.75, 1.5, 1.0], rtol=1e-9)
        np.testing.assert_allclose(authority.scores, [1.0, 1.5, 1.75], rtol=1e-9)
        self.assertTrue(hub.diagnostics["nilpotent"])

    def test_edgeless(self):
        hub, authority = katz_row_col(graphs.edgeless(4))
        np.testing.assert_array_equal(hub.scores, np.ones(4))
        np.testing.assert_array_equal(authority.scores, np.ones(4))

    def test_default_c_matches_solve(self):
        for g in [graphs.example_1()] + graphs.random_suite(10):
            hub, authority = katz_row_col(g)
            c = hub.parameters["c"]
            a = g.to_dense()
            identity = np.eye(g.n)
            np.testing.assert_allclose(hub.scores, np.linalg.solve(identity - c * a, np.ones(g.n)), rtol=1e-6)
            np.testing.assert_allclose(authority.scores, np.linalg.solve(identity - c * a.T, np.ones(g.n)),
                                       rtol=1e-6)

    def test_c_above_the_radius(self):
        g = graphs.example_1()
        rho = spectral_radius(g).value
        with self.assertRaises(ParameterError):
            katz_row_col(g, c=1.5 / rho)
        with self.assertRaises(ParameterError):
            katz_row_col(g, c=-0.1)

    def test_unconverged_radius_does_not_reject_c(self):
        g = graphs.example_1()
        a = g.to_dense()
        rho = np.abs(np.linalg.eigvals(a)).max()
        bound = radius_fallback(g)
        self.assertLess(rho, bound)

        # Admissible, though above 1 / fallback bound.
        c = 0.5 * (1.0 / rho + 1.0 / bound)
        hub, authority = katz_row_col(g, c=c, radius_max_iter=1)
        self.assertFalse(hub.diagnostics["rho_converged"])
        identity = np.eye(g.n)
        np.testing.assert_allclose(hub.scores, np.linalg.solve(identity - c * a, np.ones(g.n)), rtol=1e-8)
        np.testing.assert_allclose(authority.scores, np.linalg.solve(identity - c * a.T, np.ones(g.n)), rtol=1e-8)


class TestResolvent(unittest.TestCase):

    def test_two_cycle(self):
        hub, authority = resolvent_bipartite(graphs.two_cycle(), c=0.5)
        np.testing.assert_allclose(hub.scores, [4 / 3, 4 / 3], rtol=1e-12)
        np.testing.assert_allclose(authority.scores, [4 / 3, 4 / 3], rtol=1e-12)

    def test_edgeless(self):
        hub, authority = resolvent_bipartite(graphs.edgeless(3))
        np.testing.assert_array_equal(hub.scores, np.ones(3))
        self.assertEqual(hub.parameters["c"], 1.0)

    def test_quadrature_matches_dense(self):
        for g in [graphs.example_1()] + graphs.random_suite(10):
            if not power_singular_pair(g).converged:
                continue
            dense_hub, dense_authority = resolvent_bipartite(g, mode="dense")
            quad_hub, quad_authority = resolvent_bipartite(g, mode="quadrature", p_max=80, width_tol=1e-11)
            np.testing.assert_allclose(quad_hub.scores, dense_hub.scores, rtol=1e-8)
            np.testing.assert_allclose(quad_authority.scores, dense_authority.scores, rtol=1e-8)
            self.assertIn("bounds", quad_hub.diagnostics)

    def test_quadrature_close_to_the_pole(self):
        g = graphs.example_1()
        c = 0.995 / power_singular_pair(g).sigma1
        dense_hub, dense_authority = resolvent_bipartite(g, c=c, mode="dense")
        quad_hub, quad_authority = resolvent_bipartite(g, c=c, mode="quadrature", p_max=80, width_tol=1e-11)
        np.testing.assert_allclose(quad_hub.scores, dense_hub.scores, rtol=1e-8)
        np.testing.assert_allclose(quad_authority.scores, dense_authority.scores, rtol=1e-8)
        self.assertLess(quad_hub.diagnostics["interval"][1], 1.0 / c)

    def test_c_out_of_range(self):
        g = graphs.example_1()
        sigma1 = power_singular_pair(g).sigma1
        with self.assertRaises(ParameterError):
            resolvent_bipartite(g, c=1.01 / sigma1)
        with self.assertRaises(ParameterError):
            resolvent_bipartite(g, c=0.0)
        with self.assertRaises(ParameterError):
            resolvent_bipartite(g, mode="iterative")


class TestExpA(unittest.TestCase):

    def test_path(self):
        hub, authority = expA_row_col_sums(graphs.path(3))
        np.testing.assert_allclose(hub.scores, [2.5, 2.0, 1.0], rtol=1e-14)
        np.testing.assert_allclose(authority.scores, [1.0, 2.0, 2.5], rtol=1e-14)

    def test_edgeless(self):
        hub, _ = expA_row_col_sums(graphs.edgeless(2))
        np.testing.assert_array_equal(hub.scores, [1.0, 1.0])

    def test_sparse_path(self):
        g = graphs.example_1()
        hub, authority = expA_row_col_sums(g)
        sparse_hub, sparse_authority = expA_row_col_sums(g, threshold=0)
        np.testing.assert_allclose(sparse_hub.scores, hub.scores, rtol=1e-10)
        np.testing.assert_allclose(sparse_authority.scores, authority.scores, rtol=1e-10)


class TestPageRank(unittest.TestCase):

    def test_single_node(self):
        sv = pagerank(graphs.edgeless(1))
        np.testing.assert_allclose(sv.scores, [1.0])

    def test_two_cycle(self):
        sv = pagerank(graphs.two_cycle())
        np.testing.assert_allclose(sv.scores, [0.5, 0.5], rtol=1e-12)

    def test_against_dense(self):
        for g in [graphs.example_3(), graphs.path(5)] + graphs.random_suite(10):
            sv = pagerank(g, tol=1e-14)
            np.testing.assert_allclose(sv.scores, dense_pagerank(g, 0.85), rtol=1e-10)
            self.assertAlmostEqual(sv.scores.sum(), 1.0, places=12)
            self.assertTrue((sv.scores > 0).all())

    def test_reverse_is_the_hub_side(self):
        g = graphs.example_1()
        reverse = pagerank(g, reverse=True)
        self.assertEqual(reverse.side, Side.HUB)
        self.assertEqual(reverse.method, "reverse-pagerank")
        np.testing.assert_allclose(reverse.scores, pagerank(g.reversed()).scores, rtol=1e-14)

    def test_alpha_range(self):
        with self.assertRaises(ParameterError):
            pagerank(graphs.example_1(), alpha=1.0)


class TestDegree(unittest.TestCase):

    def test_example_1(self):
        hub, authority = degree_scores(graphs.example_1())
        self.assertEqual(rank_table(hub).groups, ((0, 1, 2), (3,)))
        self.assertEqual(rank_table(authority).groups, ((1,), (2,), (0, 3)))

    def test_example_3(self):
        _, authority = degree_scores(graphs.example_3())
        self.assertEqual(rank_table(authority).groups, ((0,), (1, 2, 3, 4), (5,)))


class TestPermutation(unittest.TestCase):
    METHODS = ('exp-exact', 'exp-quad', 'hits', 'katz', 'resolvent', 'expA', 'pagerank', 'degree')
    # Midpoints of brackets narrower than width_tol.
    RTOL = {'exp-quad': 1e-7}

    def test_scores_follow_relabelling(self):
        picker = RankerPicker()
        rng = np.random.default_rng(11)
        for g in [graphs.example_1(), graphs.example_2(), graphs.example_3()]:
            methods = self.METHODS
            if not power_singular_pair(g).is_degenerate(1e-6):
                # The leading term is only unique when sigma_1 is simple.
                methods += ('truncated',)
            for _ in range(10):
                perm = rng.permutation(g.n)
                h = graphs.permuted(g, perm)
                for method in methods:
                    for side in (Side.HUB, Side.AUTHORITY):
                        before = picker.rank(g, method, side).scores
                        after = picker.rank(h, method, side).scores
                        np.testing.assert_allclose(after[perm], before, rtol=self.RTOL.get(method, 1e-8),
                                                   atol=1e-12, err_msg="{} {}".format(method, side))


class TestRankerPicker(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.ranker_picker = RankerPicker()

    def test_every_method_runs(self):
        g = graphs.example_1()
        for method in RankerPicker.METHOD_MAP:
            for side in ('hub', 'authority'):
                sv = self.ranker_picker.rank(g, method, side)
                self.assertEqual(sv.n, 4)
                self.assertEqual(sv.side.name.lower(), side)

    def test_pagerank_hub_side_is_reverse(self):
        sv = self.ranker_picker.rank(graphs.example_1(), 'pagerank', 'hub')
        self.assertEqual(sv.method, 'reverse-pagerank')

    def test_truncated_takes_k(self):
        sv = self.ranker_picker.rank(graphs.example_1(), 'truncated', 'hub', {'k': 8})
        exact, _ = exp_centrality_exact(graphs.example_1())
        np.testing.assert_allclose(sv.scores, exact.scores, rtol=1e-9)

    def test_unknown(self):
        with self.assertRaises(ParameterError):
            self.ranker_picker.rank(graphs.example_1(), 'salsa', 'hub')
        with self.assertRaises(ParameterError):
            self.ranker_picker.rank(graphs.example_1(), 'hits', 'both')


class TestScores(unittest.TestCase):

    def sv(self, scores):
        return ScoreVector("test", Side.HUB, scores)

    def test_competition_ranks(self):
        table = rank_table(self.sv([1.0, 2.0, 2.0, 0.5]))
        self.assertEqual(table.order, (1, 2, 0, 3))
        self.assertEqual(table.groups, ((1, 2), (0,), (3,)))
        np.testing.assert_array_equal(table.ranks, [3, 1, 1, 4])
        self.assertEqual(table.top(2), (1, 2))

    def test_tie_tolerance_is_relative(self):
        table = rank_table(self.sv([1e6, 1e6 + 1e-3, 5.0]))
        self.assertEqual(table.groups[0], (0, 1))

    def test_non_finite(self):
        with self.assertRaises(NumericalError):
            self.sv([1.0, np.nan])

    def test_normalised_and_shifted(self):
        sv = self.sv([1.0, 3.0])
        np.testing.assert_allclose(normalised_scores(sv).scores, [0.25, 0.75])
        self.assertTrue(rank_table(shifted(sv)).same_ranking(rank_table(sv)))
        with self.assertRaises(NumericalError):
            normalised_scores(self.sv([0.0, 0.0]))


if __name__ == '__main__':
    unittest.main()
