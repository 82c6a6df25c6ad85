"""
CSV and JSON renderings of scores, top-k reports, comparisons and spectra.

Node ids are shifted back to the base the graph was read in. Numbers carry
4 decimals ('short') or 12 significant digits ('full') in both formats.
"""

import csv
import io
import json
from collections import Counter
from enum import Enum

import numpy as np


def format_number(value, precision="short"):
    if precision == "full":
        return "{:.12g}".format(value)
    return "{:.4f}".format(value)


class ResultWriter(object):
    """
    Base class; subclasses implement the four render methods and return
    the complete text, so nothing reaches the output before a run succeeds.
    """

    OUTPUT_FORMAT = None

    def __init__(self, precision="short", base=0):
        self.precision = precision
        self.base = base

    def number(self, value):
        return format_number(value, self.precision)

    def node(self, node):
        return int(node) + self.base

    def nodes(self, nodes):
        return [self.node(node) for node in nodes]

    def render_scores(self, sv, table, top=None, bounds=False):
        raise NotImplementedError

    def render_topk(self, report):
        raise NotImplementedError

    def render_comparison(self, report):
        raise NotImplementedError

    def render_spectrum(self, summary, ritz=None):
        raise NotImplementedError


class CsvWriter(ResultWriter):

    OUTPUT_FORMAT = "csv"

    @staticmethod
    def _table(header, rows, comments=()):
        buffer = io.StringIO()
        for comment in comments:
            buffer.write("# {}\n".format(comment))
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return buffer.getvalue()

    def _value(self, value):
        if isinstance(value, (bool, np.bool_)):
            return str(bool(value)).lower()
        if isinstance(value, (int, np.integer)):
            return str(int(value))
        if isinstance(value, (float, np.floating)):
            return self.number(value)
        return str(value)

    def render_scores(self, sv, table, top=None, bounds=False):
        header = ["node", "score", "rank"]
        if bounds:
            header += ["lower", "upper", "p"]
            node_bounds = sv.diagnostics["bounds"]

        rows = []
        for node in table.order[:top]:
            row = [self.node(node), self.number(sv.scores[node]), int(table.ranks[node])]
            if bounds:
                b = node_bounds[node]
                row += [self.number(b.lower), self.number(b.upper), b.p]
            rows.append(row)
        return self._table(header, rows)

    def render_topk(self, report):
        distribution = sorted(Counter(report.iterations.values()).items())
        comments = [
            "k={} m={} side={} certified={} fully_ordered={}".format(
                report.k, report.m, report.side.name.lower(), str(report.certified).lower(),
                str(report.fully_ordered).lower()),
            "rounds={} max_iterations={} excluded_zero_degree={} excluded_degree_one={}".format(
                report.rounds, report.max_iterations, report.excluded_zero_degree, report.excluded_degree_one),
            "iterations " + " ".join("{}:{}".format(p, count) for p, count in distribution),
        ]
        if report.unresolved:
            comments.append("unresolved " + " ".join(str(node) for node in self.nodes(report.unresolved)))

        members = set(report.members)
        rows = []
        for node in report.shortlist:
            b = report.bounds[node]
            rows.append([self.node(node), self.number(b.lower), self.number(b.upper), b.p,
                         str(b.exact).lower(), str(node in members).lower()])
        return self._table(["node", "lower", "upper", "p", "exact", "member"], rows, comments)

    def render_comparison(self, report):
        rows = [["method_a", report.method_a],
                ["method_b", report.method_b],
                ["kendall_tau_b", self.number(report.kendall_tau_b)]]
        for k, overlap in report.overlap_at_k.items():
            rows.append(["overlap_at_{}".format(k), self.number(overlap)])
        for k in report.overlap_at_k:
            rows.append(["top_{}_a".format(k), " ".join(str(n) for n in self.nodes(report.top_a[k]))])
            rows.append(["top_{}_b".format(k), " ".join(str(n) for n in self.nodes(report.top_b[k]))])
        return self._table(["metric", "value"], rows)

    def render_spectrum(self, summary, ritz=None):
        text = self._table(["metric", "value"], [[key, self._value(value)] for key, value in summary.items()])
        if ritz is not None:
            rows = [[self.number(low), self.number(high), int(count)]
                    for low, high, count in zip(ritz.edges[:-1], ritz.edges[1:], ritz.counts)]
            text += "\n" + self._table(["bin_low", "bin_high", "count"], rows)
        return text


class JsonWriter(ResultWriter):

    OUTPUT_FORMAT = "json"

    def number(self, value):
        return float(format_number(value, self.precision))

    def _plain(self, value):
        if isinstance(value, Enum):
            return value.name.lower()
        if isinstance(value, (bool, np.bool_)):
            return bool(value)
        if isinstance(value, (int, np.integer)):
            return int(value)
        if isinstance(value, (float, np.floating)):
            return self.number(value)
        if isinstance(value, np.ndarray):
            return [self._plain(x) for x in value.tolist()]
        if isinstance(value, dict):
            return {str(k): self._plain(v) for k, v in value.items()}
        if isinstance(value, (list, tuple)):
            return [self._plain(x) for x in value]
        if value is None or isinstance(value, str):
            return value
        return str(value)

    @staticmethod
    def _dump(document):
        return json.dumps(document, indent=2) + "\n"

    def render_scores(self, sv, table, top=None, bounds=False):
        diagnostics = {key: value for key, value in sv.diagnostics.items() if key != "bounds"}
        if "unresolved" in diagnostics:
            diagnostics["unresolved"] = self.nodes(diagnostics["unresolved"])

        rows = []
        for node in table.order[:top]:
            row = {"node": self.node(node), "score": self.number(sv.scores[node]), "rank": int(table.ranks[node])}
            if bounds:
                b = sv.diagnostics["bounds"][node]
                row.update(lower=self.number(b.lower), upper=self.number(b.upper), p=b.p)
            rows.append(row)

        return self._dump({
            "method": sv.method,
            "side": sv.side.name.lower(),
            "parameters": self._plain(sv.parameters),
            "diagnostics": self._plain(diagnostics),
            "rows": rows,
        })

    def render_topk(self, report):
        distribution = sorted(Counter(report.iterations.values()).items())
        return self._dump({
            "k": report.k,
            "m": report.m,
            "side": report.side.name.lower(),
            "members": self.nodes(report.members),
            "certified": report.certified,
            "fully_ordered": report.fully_ordered,
            "exact": report.exact,
            "rounds": report.rounds,
            "max_iterations": report.max_iterations,
            "iterations": {str(self.node(node)): p for node, p in report.iterations.items()},
            "iteration_distribution": {str(p): count for p, count in distribution},
            "excluded_zero_degree": report.excluded_zero_degree,
            "excluded_degree_one": report.excluded_degree_one,
            "unresolved": self.nodes(report.unresolved),
            "shortlist": [{"node": self.node(node),
                           "lower": self.number(report.bounds[node].lower),
                           "upper": self.number(report.bounds[node].upper),
                           "p": report.bounds[node].p,
                           "exact": report.bounds[node].exact} for node in report.shortlist],
        })

    def render_comparison(self, report):
        return self._dump({
            "method_a": report.method_a,
            "method_b": report.method_b,
            "kendall_tau_b": self.number(report.kendall_tau_b),
            "overlap_at_k": {str(k): self.number(v) for k, v in report.overlap_at_k.items()},
            "top_a": {str(k): self.nodes(v) for k, v in report.top_a.items()},
            "top_b": {str(k): self.nodes(v) for k, v in report.top_b.items()},
        })

    def render_spectrum(self, summary, ritz=None):
        document = self._plain(summary)
        if ritz is not None:
            document["ritz"] = {
                "values": self._plain(ritz.values),
                "histogram": [{"low": self.number(low), "high": self.number(high), "count": int(count)}
                              for low, high, count in zip(ritz.edges[:-1], ritz.edges[1:], ritz.counts)],
            }
        return self._dump(document)
