"""
Score vectors and the tie-aware rankings they induce.
"""

from dataclasses import dataclass, field, replace

import numpy as np

from hubrank.src.rank.proc.common_util.util import NumericalError, ParameterError
from hubrank.src.rank.proc.constants import constants
from hubrank.src.rank.proc.constants.constants import Side


@dataclass(frozen=True, eq=False)
class ScoreVector:
    """
    Per-node scores of one method on one side (hub or authority).

    ``diagnostics`` holds iteration counts, residuals and flags such as
    'converged' or 'degenerate'.
    """
    method: str
    side: Side
    scores: np.ndarray
    parameters: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        scores = np.array(self.scores, dtype=np.float64).ravel()
        if not np.isfinite(scores).all():
            raise NumericalError("{} produced non-finite {} scores".format(self.method, self.side.name.lower()))
        scores.flags.writeable = False
        object.__setattr__(self, "scores", scores)

    @property
    def n(self):
        return self.scores.size

    def rank_table(self, tie_tol=constants.TIE_TOL):
        return rank_table(self, tie_tol)


@dataclass(frozen=True, eq=False)
class RankTable:
    """
    ``order`` lists node ids best first; ``groups`` are the tie groups in the
    same order, ids ascending inside each; ``ranks[i]`` is the shared
    (competition) rank of node i, 1-based.
    """
    order: tuple
    groups: tuple
    ranks: np.ndarray
    source: ScoreVector

    def top(self, k):
        return self.order[:k]

    def same_ranking(self, other):
        return self.groups == other.groups

    def __len__(self):
        return len(self.order)


def rank_table(sv, tie_tol=constants.TIE_TOL):
    """
    Sort by descending score. Neighbouring scores within
    tie_tol * max(1, score) are tied; tied ids are listed ascending.

    :param sv: ScoreVector
    :returns: RankTable
    """
    scores = sv.scores
    n = scores.size
    if n == 0:
        raise ParameterError("Cannot rank an empty score vector")

    by_score = np.lexsort((np.arange(n), -scores))

    groups = []
    current = [int(by_score[0])]
    for previous, node in zip(by_score[:-1], by_score[1:]):
        if abs(scores[previous] - scores[node]) <= tie_tol * max(1.0, abs(scores[previous])):
            current.append(int(node))
        else:
            groups.append(tuple(sorted(current)))
            current = [int(node)]
    groups.append(tuple(sorted(current)))

    ranks = np.zeros(n, dtype=np.int64)
    position = 1
    for group in groups:
        ranks[list(group)] = position
        position += len(group)
    ranks.flags.writeable = False

    order = tuple(node for group in groups for node in group)
    return RankTable(order, tuple(groups), ranks, sv)


def normalised_scores(sv):
    """
    Scores divided by their sum; for the exponential methods this reads the
    diagonal of e^M / Tr as a probability over one side.
    """
    total = sv.scores.sum()
    if total <= 0:
        raise NumericalError("Cannot normalise scores that sum to {}".format(total))
    return replace(sv, method=sv.method + "-normalised", scores=sv.scores / total)


def shifted(sv, shift=1.0):
    """
    Subtract a constant from every score. Exponential scores are >= 1, so
    shift=1 leaves the pure walk contribution; the ranking is unchanged.
    """
    return replace(sv, scores=sv.scores - shift,
                   parameters=dict(sv.parameters, shift=shift))
