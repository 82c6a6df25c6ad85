"""
Certified top-k hubs or authorities by exponential centrality.

Every candidate keeps its own Lanczos run; each round the brackets of the
survivors are tightened by p_step steps and a candidate is dropped once its
upper bound falls below the k-th largest lower bound. Gauss-Radau brackets
shrink monotonically, so a dropped node can never re-enter.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from hubrank.src.rank.proc.common_util.util import ParameterError
from hubrank.src.rank.proc.constants import constants
from hubrank.src.rank.proc.constants.constants import Side, parse_side
from hubrank.src.rank.proc.graph.directed_graph import bipartite_operator
from hubrank.src.rank.proc.linalg.lanczos import LanczosProcess
from hubrank.src.rank.proc.quadrature.gauss import EXP, NodeBounds, bracket, spectrum_interval, unit_start
from hubrank.src.rank.proc.rankers.scores import ScoreVector, rank_table

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExclusionPolicy:
    """
    zero_degree: nodes with no out-edges (hubs) or no in-edges (authorities)
        have score exactly 1 and skip Lanczos.
    degree_one: drop nodes with in- and out-degree 1 altogether (heuristic,
        off by default).
    """
    zero_degree: bool = True
    degree_one: bool = False


@dataclass(frozen=True, eq=False)
class TopKReport:
    k: int
    m: int
    side: Side
    members: tuple
    shortlist: tuple
    bounds: dict
    certified: bool
    fully_ordered: bool
    iterations: dict = field(default_factory=dict)
    rounds: int = 0
    excluded_zero_degree: int = 0
    excluded_degree_one: int = 0
    unresolved: tuple = ()

    @property
    def max_iterations(self):
        return max(self.iterations.values(), default=0)

    @property
    def exact(self):
        return all(self.bounds[node].exact for node in self.members)

    def describe_ties(self):
        if not self.unresolved:
            return ""
        return "nodes {} could not be separated at p_max; admitted by ascending id".format(
            ", ".join(str(node) for node in self.unresolved))


class _Candidate(object):

    def __init__(self, node, index, op, iv):
        self.node = node
        self.index = index
        self.iv = iv
        self.process = LanczosProcess(op, unit_start(op, index), scale=iv.b or None)
        self.bounds = None

    def refine(self, p):
        self.bounds = bracket(self.process, self.node, p, self.iv, EXP)
        return self.bounds

    @property
    def done(self):
        return self.bounds is not None and self.bounds.exact


class TopKSearch(object):
    """
    One pruning run. ``k`` sets the pruning threshold (k-th largest lower
    bound); the run stops once at most ``m`` candidates survive.
    """

    def __init__(self, g, k, m, side, p_max=constants.PMAX, exclusions=None,
                 tie_tol=constants.TIE_TOL, p_start=constants.TOPK_P_START,
                 p_step=constants.TOPK_P_STEP, threads=1):

        self.graph = g
        self.side = parse_side(side)
        self.exclusions = exclusions or ExclusionPolicy()
        self.tie_tol = tie_tol
        self.p_max = p_max
        self.p_start = min(p_start, p_max)
        self.p_step = p_step
        self.threads = threads

        if p_max < 1 or p_start < 1 or p_step < 1:
            raise ParameterError("p_max, p_start and p_step must all be >= 1")
        if threads < 1:
            raise ParameterError("threads must be >= 1, got {}".format(threads))

        n = g.n
        out_deg, in_deg = g.out_degrees(), g.in_degrees()
        own = out_deg if self.side is Side.HUB else in_deg

        dropped = np.zeros(n, dtype=bool)
        if self.exclusions.degree_one:
            dropped = (out_deg == 1) & (in_deg == 1)
        fixed = (own == 0) & ~dropped if self.exclusions.zero_degree else np.zeros(n, dtype=bool)

        self.eligible = n - int(dropped.sum())
        if not 1 <= k <= self.eligible:
            raise ParameterError("k = {} must lie in [1, {}] (eligible nodes)".format(k, self.eligible))
        if not k <= m:
            raise ParameterError("m = {} must be >= k = {}".format(m, k))

        self.k = k
        self.m = min(m, self.eligible)
        self.excluded_zero_degree = int(fixed.sum())
        self.excluded_degree_one = int(dropped.sum())

        offset = 0 if self.side is Side.HUB else n
        op = bipartite_operator(g)
        iv = spectrum_interval(g)

        self.fixed = {int(node): NodeBounds(int(node), 1.0, 1.0, 0, True) for node in np.flatnonzero(fixed)}
        self.candidates = [_Candidate(int(node), offset + int(node), op, iv)
                           for node in np.flatnonzero(~fixed & ~dropped)]
        self.rounds = 0

    def _refine(self, candidates, p):
        work = [c for c in candidates if not c.done and (c.bounds is None or c.bounds.p < p)]
        if self.threads == 1 or len(work) < 2:
            for c in work:
                c.refine(p)
            return
        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            list(pool.map(lambda c: c.refine(p), work))

    def _alive(self):
        alive = {c.node: c.bounds for c in self.candidates}
        alive.update(self.fixed)
        return alive

    def _prune(self):
        alive = self._alive()
        lowers = sorted((b.lower for b in alive.values()), reverse=True)
        level = lowers[self.k - 1]
        threshold = level - self.tie_tol * max(1.0, abs(level))

        self.candidates = [c for c in self.candidates if c.bounds.upper >= threshold]
        self.fixed = {node: b for node, b in self.fixed.items() if b.upper >= threshold}
        return level

    def _settled(self):
        return all(c.done or c.bounds.p >= self.p_max for c in self.candidates)

    def run(self):
        p = self.p_start
        self._refine(self.candidates, p)

        while True:
            self.rounds += 1
            level = self._prune()
            survivors = len(self.candidates) + len(self.fixed)
            logger.debug("Top-k round {}: p = {}, level = {:.10g}, {} survivor(s)".format(
                self.rounds, p, level, survivors))

            if survivors <= self.m or self._settled():
                break
            p = min(p + self.p_step, self.p_max)
            self._refine(self.candidates, p)

        return self._alive()

    def order(self):
        """
        Refine the current top-k until neighbouring brackets separate or no
        bracket can improve.

        :returns: True when the members are fully ordered.
        """
        while True:
            alive = self._alive()
            members = self.tie_order(alive)[:self.k]
            overlapping = set()
            for high, low in zip(members[:-1], members[1:]):
                if not self._separated(alive[high], alive[low]):
                    overlapping.update((high, low))

            work = [c for c in self.candidates
                    if c.node in overlapping and not c.done and c.bounds.p < self.p_max]
            if not work:
                return self.fully_ordered(members, alive)
            for c in work:
                c.refine(min(c.bounds.p + self.p_step, self.p_max))

    def fully_ordered(self, members, alive):
        return all(self._separated(alive[high], alive[low]) or (alive[high].exact and alive[low].exact)
                   for high, low in zip(members[:-1], members[1:]))

    def _separated(self, high, low):
        return high.lower >= low.upper - self.tie_tol * max(1.0, abs(low.upper))

    def tie_order(self, alive):
        """
        Node ids ordered by bracket midpoint, best first; ties within
        tie_tol are listed by ascending id.
        """
        nodes = sorted(alive)
        midpoints = ScoreVector("exp-quad", self.side, [alive[node].midpoint for node in nodes])
        return tuple(nodes[position] for position in rank_table(midpoints, self.tie_tol).order)


def _report(search, history, fully_ordered=None):
    alive = search._alive()
    shortlist = search.tie_order(alive)
    members = shortlist[:search.k]
    certified = len(shortlist) <= search.m

    if fully_ordered is None:
        fully_ordered = search.fully_ordered(members, alive)

    unresolved = tuple(sorted(shortlist[search.m:]))
    if unresolved:
        logger.warning("Top-{} {}: {} node(s) left unresolved at p_max = {}".format(
            search.k, search.side.name.lower(), len(unresolved), search.p_max))

    return TopKReport(
        k=search.k,
        m=search.m,
        side=search.side,
        members=members,
        shortlist=shortlist,
        bounds={node: alive[node] for node in shortlist},
        certified=certified,
        fully_ordered=bool(fully_ordered),
        iterations=dict(sorted(history.items())),
        rounds=search.rounds,
        excluded_zero_degree=search.excluded_zero_degree,
        excluded_degree_one=search.excluded_degree_one,
        unresolved=unresolved,
    )


def _search(g, k, m, side, p_max, exclusions, order_members, **kwargs):
    search = TopKSearch(g, k, m, side, p_max=p_max, exclusions=exclusions, **kwargs)
    everyone = list(search.candidates)
    search.run()
    fully_ordered = search.order() if order_members else None
    history = {c.node: c.bounds.p for c in everyone}
    return _report(search, history, fully_ordered)


def identify_top_k(g, k, side, p_max=constants.PMAX, exclusions=None, order_members=False, **kwargs):
    """
    The k nodes of largest exponential hub or authority centrality.

    :param g: DirectedGraph
    :param k: 1 <= k <= eligible nodes.
    :param side: 'hub', 'authority' or Side.
    :param p_max: largest Lanczos order per node.
    :param exclusions: ExclusionPolicy, zero-degree exclusion only by default.
    :param order_members: also refine the members until they are ordered.
    :param kwargs: tie_tol, p_start, p_step, threads.
    :returns: TopKReport
    """
    return _search(g, k, k, side, p_max, exclusions, order_members, **kwargs)


def rank_in_top_m(g, k, m, side, p_max=constants.PMAX, exclusions=None, **kwargs):
    """
    Certify a shortlist of at most m nodes that contains the top k. Pruning
    uses the k-th largest lower bound, only the stopping size is relaxed,
    so a larger m never costs more iterations.

    :returns: TopKReport; ``members`` are the k best of the shortlist by
        midpoint, ``shortlist`` the certified superset.
    """
    if m == k:
        return identify_top_k(g, k, side, p_max=p_max, exclusions=exclusions, **kwargs)
    return _search(g, k, m, side, p_max, exclusions, False, **kwargs)
