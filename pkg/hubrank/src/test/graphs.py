# encoding: utf-8
"""
Small reference graphs and a seeded random suite shared by the tests.
"""
__author__ = 'hubrank developers'
__date__ = '18 Oct 2026'
__license__ = 'BSD - see LICENSE file in top-level package directory'

import os

import numpy as np

from hubrank.src.rank.proc.graph.directed_graph import DirectedGraph

FILES = os.path.join(os.path.dirname(__file__), "files")

SUITE_SIZE = 50
SUITE_SEED = 20090527

# 1-based edge lists of the worked examples.
EXAMPLE_1 = [(1, 2), (1, 3), (2, 1), (2, 3), (3, 2), (3, 4), (4, 2)]
EXAMPLE_2 = [(1, 3), (2, 1), (2, 4), (3, 2), (4, 2)]
EXAMPLE_3 = [(2, 1), (3, 1), (4, 1), (5, 1), (6, 2), (6, 3), (6, 4), (6, 5)]


def fixture(name):
    return os.path.join(FILES, name)


def graph(n, edges, base=0):
    sources = [u - base for u, _ in edges]
    targets = [v - base for _, v in edges]
    return DirectedGraph.from_edges(n, sources, targets)


def example_1():
    return graph(4, EXAMPLE_1, base=1)


def example_2():
    return graph(4, EXAMPLE_2, base=1)


def example_3():
    return graph(6, EXAMPLE_3, base=1)


def path(n):
    return graph(n, [(i, i + 1) for i in range(n - 1)])


def two_cycle():
    return graph(2, [(0, 1), (1, 0)])


def edgeless(n):
    return DirectedGraph.from_edges(n, [], [])


def permuted(g, perm):
    """
    Relabel node i as perm[i].
    """
    perm = np.asarray(perm)
    edges = list(g.edges())
    return DirectedGraph.from_edges(g.n, [perm[u] for u, _, _ in edges], [perm[v] for _, v, _ in edges])


def random_graph(rng):
    # Redraw the rare edgeless sample.
    while True:
        n = int(rng.integers(5, 41))
        p = float(rng.uniform(0.1, 0.5))
        mask = rng.random((n, n)) < p
        np.fill_diagonal(mask, False)
        if mask.any():
            break
    sources, targets = np.nonzero(mask)
    return DirectedGraph.from_edges(n, sources, targets)


def random_suite(count=SUITE_SIZE, seed=SUITE_SEED):
    """
    Erdos-Renyi digraphs with n in [5, 40] and edge probability in
    [0.1, 0.5], the same ones on every call.
    """
    rng = np.random.default_rng(seed)
    return [random_graph(rng) for _ in range(count)]
