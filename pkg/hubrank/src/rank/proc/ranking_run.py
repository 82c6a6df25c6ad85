"""
'Ranking run' module - loads a graph, runs the requested subcommand and
renders the result.
"""

import datetime
import logging
from dataclasses import dataclass

from hubrank.src.rank.out_iface.factory import WriterFactory
from hubrank.src.rank.proc import analysis, topk
from hubrank.src.rank.proc.common_util import util
from hubrank.src.rank.proc.common_util.util import ParameterError
from hubrank.src.rank.proc.constants import constants
from hubrank.src.rank.proc.constants.constants import Script_status, Side, parse_side
from hubrank.src.rank.proc.graph.loader_picker import LoaderPicker
from hubrank.src.rank.proc.linalg.power import spectral_radius
from hubrank.src.rank.proc.rankers.ranker_picker import RankerPicker
from hubrank.src.rank.proc.rankers.scores import normalised_scores

INPUT_FORMATS = ("auto", "edgelist", "mtx", "adjlist")
OUTPUT_FORMATS = ("csv", "json")
PRECISIONS = ("short", "full")


def _setting(settings, key, section, option, cast, default=None):
    """
    Command-line value, else the INI value, else ``default``.
    """
    raw = settings.get(key)
    if raw is None:
        raw = settings.get(section, {}).get(option)
    if raw is None or raw == "":
        return default
    try:
        return cast(raw)
    except (TypeError, ValueError):
        raise ParameterError("Invalid value for {}: {!r}".format(key, raw))


def _ks(raw):
    return tuple(int(k) for k in str(raw).split(",") if k.strip())


@dataclass(frozen=True)
class RunConfig:
    """
    Validated settings of one command-line run. Graph-dependent ranges (c
    against 1/rho or 1/sigma_1, k against eligible nodes) are checked by the
    code that owns them.
    """
    status: Script_status
    input: str
    input_format: str = "auto"
    base: int = 0
    method: str = "exp-exact"
    versus: str = None
    side: Side = Side.HUB
    out: str = None
    output_format: str = "csv"
    precision: str = "short"
    top: int = None
    threads: int = 1
    tol: float = constants.TOL
    max_iter: int = constants.MAX_ITER
    p_max: int = constants.PMAX
    width_tol: float = constants.WIDTH_TOL
    dense_threshold: int = constants.DENSE_THRESHOLD
    radius_max_iter: int = constants.RADIUS_MAX_ITER
    tie_tol: float = constants.TIE_TOL
    k: int = None
    m: int = None
    c: float = None
    alpha: float = constants.PAGERANK_ALPHA
    katz_offset: float = constants.KATZ_OFFSET
    resolvent_fraction: float = constants.RESOLVENT_FRACTION
    p_start: int = constants.TOPK_P_START
    p_step: int = constants.TOPK_P_STEP
    exclude_degree_one: bool = False
    order: bool = False
    normalise: bool = False
    bounds: bool = False
    ritz: int = None
    bins: int = 20
    ks: tuple = (10,)
    verbose: bool = False

    def __post_init__(self):
        methods = RankerPicker.METHOD_MAP
        checks = [
            (bool(self.input), "an input graph is required"),
            (self.input_format in INPUT_FORMATS, "format must be one of {}".format(", ".join(INPUT_FORMATS))),
            (self.base in (0, 1), "base must be 0 or 1"),
            (self.method in methods, "unknown method {}".format(self.method)),
            (self.versus is None or self.versus in methods, "unknown method {}".format(self.versus)),
            (self.output_format in OUTPUT_FORMATS, "output format must be csv or json"),
            (self.precision in PRECISIONS, "precision must be short or full"),
            (self.top is None or self.top >= 1, "top must be >= 1"),
            (self.threads >= 1, "threads must be >= 1"),
            (self.tol > 0, "tol must be > 0"),
            (self.max_iter >= 1, "max-iter must be >= 1"),
            (self.p_max >= 1, "pmax must be >= 1"),
            (self.width_tol > 0, "width-tol must be > 0"),
            (self.dense_threshold >= 1, "dense-threshold must be >= 1"),
            (self.radius_max_iter >= 1, "radius-max-iter must be >= 1"),
            (self.tie_tol >= 0, "tie-tol must be >= 0"),
            (self.k is None or self.k >= 1, "k must be >= 1"),
            (self.m is None or (self.k is not None and self.m >= self.k), "m must be >= k"),
            (self.c is None or self.c > 0, "c must be > 0"),
            (0 < self.alpha < 1, "alpha must lie in (0, 1)"),
            (self.katz_offset > 0, "katz-offset must be > 0"),
            (0 < self.resolvent_fraction < 1, "resolvent-fraction must lie in (0, 1)"),
            (self.p_start >= 1 and self.p_step >= 1, "p-start and p-step must be >= 1"),
            (self.ritz is None or self.ritz >= 1, "ritz must be >= 1"),
            (self.bins >= 1, "bins must be >= 1"),
            (len(self.ks) > 0 and all(k >= 1 for k in self.ks), "ks must be positive integers"),
            (self.status is not Script_status.TOPK or self.k is not None, "topk needs --k"),
            (self.status is not Script_status.COMPARE or self.versus is not None, "compare needs --versus"),
        ]
        for ok, message in checks:
            if not ok:
                raise ParameterError(message)

    @classmethod
    def from_settings(cls, settings, status):
        """
        :param settings: layered settings from util.get_settings.
        :param status: Script_status of the subcommand.
        :returns: RunConfig
        """
        output_format = "json" if settings.get("json") else _setting(
            settings, "output-format", "output", "format", str, "csv")

        return cls(
            status=status,
            input=settings.get("input"),
            input_format=_setting(settings, "format", None, None, str, "auto"),
            base=_setting(settings, "base", None, None, int, 0),
            method=_setting(settings, "method", None, None, str, "exp-exact"),
            versus=_setting(settings, "versus", None, None, str),
            side=parse_side(_setting(settings, "side", None, None, str, "hub")),
            out=_setting(settings, "out", None, None, str),
            output_format=output_format,
            precision=_setting(settings, "precision", "output", "precision", str, "short"),
            top=_setting(settings, "top", None, None, int),
            threads=_setting(settings, "threads", None, None, int, 1),
            tol=_setting(settings, "tol", "numerics", "tol", float, constants.TOL),
            max_iter=_setting(settings, "max-iter", "numerics", "max-iter", int, constants.MAX_ITER),
            p_max=_setting(settings, "pmax", "numerics", "pmax", int, constants.PMAX),
            width_tol=_setting(settings, "width-tol", "numerics", "width-tol", float, constants.WIDTH_TOL),
            dense_threshold=_setting(settings, "dense-threshold", "numerics", "dense-threshold", int,
                                     constants.DENSE_THRESHOLD),
            radius_max_iter=_setting(settings, "radius-max-iter", "numerics", "radius-max-iter", int,
                                     constants.RADIUS_MAX_ITER),
            tie_tol=_setting(settings, "tie-tol", "ranking", "tie-tol", float, constants.TIE_TOL),
            k=_setting(settings, "k", None, None, int),
            m=_setting(settings, "m", None, None, int),
            c=_setting(settings, "c", None, None, float),
            alpha=_setting(settings, "alpha", "ranking", "alpha", float, constants.PAGERANK_ALPHA),
            katz_offset=_setting(settings, "katz-offset", "ranking", "katz-offset", float, constants.KATZ_OFFSET),
            resolvent_fraction=_setting(settings, "resolvent-fraction", "ranking", "resolvent-fraction", float,
                                        constants.RESOLVENT_FRACTION),
            p_start=_setting(settings, "p-start", "topk", "p-start", int, constants.TOPK_P_START),
            p_step=_setting(settings, "p-step", "topk", "p-step", int, constants.TOPK_P_STEP),
            exclude_degree_one=_setting(settings, "exclude-degree-one", "topk", "exclude-degree-one",
                                        util.as_bool, False),
            order=bool(settings.get("order")),
            normalise=bool(settings.get("normalise")),
            bounds=bool(settings.get("bounds")),
            ritz=_setting(settings, "ritz", None, None, int),
            bins=_setting(settings, "bins", None, None, int, 20),
            ks=_setting(settings, "ks", None, None, _ks, (10,)),
            verbose=bool(settings.get("verbose")),
        )


class RankingRun(object):
    """
    One command-line run: graph loading, the subcommand's computation and
    rendering. Nothing is written here; ``run`` returns the rendered text.
    """

    def __init__(self, conf, status):

        self.configuration = conf
        self.run_config = RunConfig.from_settings(conf, status)
        self.logger = None

        self.loader_picker = LoaderPicker()
        self.ranker_picker = RankerPicker()
        self.graph = None
        self.writer = None

    # General purpose methods
    def conf(self, conf_opt):
        """
        Return configuration option or raise exception if it doesn't exist.
        :param str conf_opt: The name of the configuration option to find.
        """
        if conf_opt in self.configuration:
            return self.configuration[conf_opt]
        else:
            raise ParameterError("Mandatory configuration option not found: {}".format(conf_opt))

    def prepare_logging(self):
        util.setup_logging(self.conf("core"))
        self.logger = logging.getLogger(__name__)

    def load_graph(self):
        rc = self.run_config
        loader = self.loader_picker.pick_best_loader(rc.input, rc.input_format)
        with loader(rc.input, index_base=rc.base) as reader:
            self.graph = reader.get_graph()
        self.logger.debug("{} was read using {}.".format(rc.input, reader.handler_id))
        return self.graph

    def ranker_params(self):
        rc = self.run_config
        return {
            "tol": rc.tol,
            "max_iter": rc.max_iter,
            "pmax": rc.p_max,
            "width_tol": rc.width_tol,
            "threads": rc.threads,
            "threshold": rc.dense_threshold,
            "c": rc.c,
            "alpha": rc.alpha,
            "k": rc.k,
            "katz_offset": rc.katz_offset,
            "radius_max_iter": rc.radius_max_iter,
            "resolvent_fraction": rc.resolvent_fraction,
        }

    def score(self, method):
        rc = self.run_config
        sv = self.ranker_picker.rank(self.graph, method, rc.side, self.ranker_params())
        if rc.normalise:
            sv = normalised_scores(sv)
        return sv

    def run_rank(self):
        rc = self.run_config
        sv = self.score(rc.method)
        if rc.bounds and "bounds" not in sv.diagnostics:
            raise ParameterError("--bounds needs a quadrature method (exp-quad or resolvent on a large graph)")
        table = sv.rank_table(rc.tie_tol)
        self.logger.info("Ranked {} nodes by {} ({} side)".format(len(table), sv.method, sv.side.name.lower()))
        return self.writer.render_scores(sv, table, top=rc.top, bounds=rc.bounds)

    def run_topk(self):
        rc = self.run_config
        exclusions = topk.ExclusionPolicy(degree_one=rc.exclude_degree_one)
        kwargs = {"tie_tol": rc.tie_tol, "p_start": rc.p_start, "p_step": rc.p_step, "threads": rc.threads}
        if rc.m is not None and rc.m != rc.k:
            report = topk.rank_in_top_m(self.graph, rc.k, rc.m, rc.side, p_max=rc.p_max,
                                        exclusions=exclusions, **kwargs)
        else:
            report = topk.identify_top_k(self.graph, rc.k, rc.side, p_max=rc.p_max, exclusions=exclusions,
                                         order_members=rc.order, **kwargs)
        self.logger.info("Top-{} {}: certified={}, rounds={}, max iterations={}".format(
            report.k, report.side.name.lower(), report.certified, report.rounds, report.max_iterations))
        return self.writer.render_topk(report)

    def run_compare(self):
        rc = self.run_config
        first = self.score(rc.method).rank_table(rc.tie_tol)
        second = self.score(rc.versus).rank_table(rc.tie_tol)
        report = analysis.compare(first, second, rc.ks)
        self.logger.info("{} vs {}: tau_b = {:.6f}".format(report.method_a, report.method_b, report.kendall_tau_b))
        return self.writer.render_comparison(report)

    def run_spectrum(self):
        rc = self.run_config
        g = self.graph
        gap = analysis.spectral_gap(g, tol=rc.tol)
        summary = {
            "n": g.n,
            "m": g.m,
            "sigma1": gap.sigma1,
            "sigma2": gap.sigma2,
            "relative_gap": gap.relative_gap,
            "annotation": gap.annotation,
            "rho": spectral_radius(g, tol=rc.tol, max_iter=rc.radius_max_iter).value,
            "symmetry_fraction": analysis.symmetry_fraction(g),
        }
        if 2 * g.n <= rc.dense_threshold:
            summary["estrada_index"] = analysis.estrada_index(g, threshold=rc.dense_threshold)
        else:
            self.logger.info("Estrada index skipped: 2n = {} exceeds the dense threshold".format(2 * g.n))

        ritz = analysis.ritz_histogram(g, rc.ritz, rc.bins) if rc.ritz else None
        return self.writer.render_spectrum(summary, ritz)

    def run(self):
        """
        :returns: the rendered output of the subcommand.
        """
        if self.logger is None:
            self.prepare_logging()

        rc = self.run_config
        start = datetime.datetime.now()
        self.logger.debug("***Run started: {}***".format(rc.status.name.lower()))

        self.load_graph()
        self.writer = WriterFactory.get_writer(rc.output_format, rc.precision, self.graph.index_base)

        actions = {
            Script_status.RANK: self.run_rank,
            Script_status.TOPK: self.run_topk,
            Script_status.COMPARE: self.run_compare,
            Script_status.SPECTRUM: self.run_spectrum,
        }
        output = actions[rc.status]()

        self.logger.info("Summary information for {}: {} nodes, {} edges, ran for {}".format(
            rc.input, self.graph.n, self.graph.m, datetime.datetime.now() - start))
        return output
