import logging

from hubrank.src.rank.proc.common_util.util import ParameterError
from hubrank.src.rank.proc.constants import constants
from hubrank.src.rank.proc.constants.constants import Side, parse_side
from hubrank.src.rank.proc.rankers import exponential, link_analysis, resolvent
from hubrank.src.rank.proc.quadrature.gauss import EXP

logger = logging.getLogger(__name__)


def _pick(pair, side):
    return pair[0] if side is Side.HUB else pair[1]


def _exp_exact(g, side, params):
    return _pick(exponential.exp_centrality_exact(g, threshold=params.get("threshold", constants.DENSE_THRESHOLD)),
                 side)


def _exp_quad(g, side, params):
    result = exponential.quadrature_centrality(
        g, EXP, "exp-quad", sides=(side,),
        p_max=params.get("pmax", constants.PMAX),
        width_tol=params.get("width_tol", constants.WIDTH_TOL),
        threads=params.get("threads", 1))
    return result[side]


def _hits(g, side, params):
    return _pick(link_analysis.hits(g, tol=params.get("tol", constants.TOL),
                                    max_iter=params.get("max_iter", constants.MAX_ITER)), side)


def _truncated(g, side, params):
    return _pick(exponential.truncated_spectral_scores(
        g, params.get("k") or 1, tol=params.get("tol", constants.TOL),
        threshold=params.get("threshold", constants.DENSE_THRESHOLD)), side)


def _katz(g, side, params):
    return _pick(resolvent.katz_row_col(g, c=params.get("c"),
                                        offset=params.get("katz_offset", constants.KATZ_OFFSET),
                                        radius_max_iter=params.get("radius_max_iter", constants.RADIUS_MAX_ITER)),
                 side)


def _resolvent(g, side, params):
    return _pick(resolvent.resolvent_bipartite(
        g, c=params.get("c"),
        threshold=params.get("threshold", constants.DENSE_THRESHOLD),
        fraction=params.get("resolvent_fraction", constants.RESOLVENT_FRACTION),
        p_max=params.get("pmax", constants.PMAX),
        width_tol=params.get("width_tol", constants.WIDTH_TOL),
        threads=params.get("threads", 1)), side)


def _expA(g, side, params):
    return _pick(resolvent.expA_row_col_sums(g, threshold=params.get("threshold", constants.DENSE_THRESHOLD)), side)


def _pagerank(g, side, params):
    # Hubs come from Reverse PageRank.
    return link_analysis.pagerank(g, alpha=params.get("alpha", constants.PAGERANK_ALPHA),
                                  tol=params.get("tol", constants.TOL),
                                  max_iter=params.get("max_iter", constants.MAX_ITER),
                                  reverse=side is Side.HUB)


def _degree(g, side, params):
    return _pick(link_analysis.degree_scores(g), side)


class RankerPicker(object):
    """
    Maps a method id from the command line to the ranker computing it.
    """

    METHOD_MAP = {
        'exp-exact': _exp_exact,
        'exp-quad': _exp_quad,
        'hits': _hits,
        'truncated': _truncated,
        'katz': _katz,
        'resolvent': _resolvent,
        'expA': _expA,
        'pagerank': _pagerank,
        'degree': _degree,
    }

    def pick_best_ranker(self, method):
        """
        :param method: method id, one of METHOD_MAP.
        :returns: callable (graph, side, params) -> ScoreVector
        """
        try:
            return self.METHOD_MAP[method]
        except KeyError:
            raise ParameterError("Unknown method: {} (expected one of {})".format(
                method, ", ".join(sorted(self.METHOD_MAP))))

    def rank(self, g, method, side, params=None):
        """
        :param g: DirectedGraph
        :param method: method id.
        :param side: 'hub', 'authority' or a Side member.
        :param params: dict of optional parameters (tol, max_iter, pmax,
            width_tol, threads, c, alpha, k, threshold, ...).
        :returns: ScoreVector
        """
        ranker = self.pick_best_ranker(method)
        side = parse_side(side)
        logger.debug("Running {} on the {} side".format(method, side.name.lower()))
        return ranker(g, side, dict(params or {}))
