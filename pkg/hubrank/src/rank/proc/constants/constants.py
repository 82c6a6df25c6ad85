from enum import Enum

from hubrank.src.rank.proc.common_util.util import ParameterError

Side = Enum("Side", "HUB AUTHORITY")

FunctionKind = Enum("FunctionKind", "EXP RESOLVENT")

Script_status = Enum("Script_status",
                     "RANK \
                      TOPK \
                      COMPARE \
                      SPECTRUM"
                     )


class ExitCode(Enum):
    OK = 0
    MALFORMED_INPUT = 1
    INVALID_PARAMETER = 2
    NUMERICAL_FAILURE = 3


# Numerical defaults, overridable from the [numerics]/[ranking]/[topk] sections.
DENSE_THRESHOLD = 4000
TOL = 1e-10
MAX_ITER = 1000
RADIUS_MAX_ITER = 5000
PMAX = 64
WIDTH_TOL = 1e-8
TIE_TOL = 1e-8
BREAKDOWN_FACTOR = 1e-12
SPECTRUM_PADDING = 0.01
PAGERANK_ALPHA = 0.85
KATZ_OFFSET = 0.1
RESOLVENT_FRACTION = 0.9
TOPK_P_START = 3
TOPK_P_STEP = 2

# Relative gap thresholds for the HITS-reliability annotation.
GAP_WIDE = 0.15
GAP_NARROW = 0.05


def parse_side(value):
    """
    :param value: 'hub' or 'authority' (any case) or a Side member.
    :returns: Side member.
    """
    if isinstance(value, Side):
        return value
    try:
        return Side[str(value).upper()]
    except KeyError:
        raise ParameterError("Unknown side: {} (expected hub or authority)".format(value))
