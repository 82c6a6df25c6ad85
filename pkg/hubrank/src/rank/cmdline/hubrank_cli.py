#!/usr/bin/env python

"""
Usage:
  hubrank -h | --help
  hubrank --version
  hubrank rank (-i <path> | --input <path>) [options]
  hubrank topk (-i <path> | --input <path>) --k <k> [options]
  hubrank compare (-i <path> | --input <path>) --versus <method> [options]
  hubrank spectrum (-i <path> | --input <path>) [options]

Options:
  -h --help                   Show this screen.

  --version                   Show version.

  -i --input=<path>           Graph file to read.

  --format=<fmt>              Input format: edgelist, mtx, adjlist or auto
                              (extension, then header sniffing).

  --base=<base>               Index base of node ids in the input, 0 or 1.
                              Matrix Market files are always 1-based.

  --method=<method>           exp-exact, exp-quad, hits, truncated, katz,
                              resolvent, expA, pagerank or degree
                              (pagerank on the hub side is Reverse PageRank).

  --versus=<method>           Second method for compare.

  --side=<side>               hub or authority.

  -o --out=<path>             Write the result here instead of stdout.

  --json                      JSON output instead of CSV.

  --precision=<prec>          short (4 decimals) or full (12 significant
                              digits).

  --top=<n>                   Only print the first n rows of a ranking.

  --threads=<n>               Worker threads for per-node quadrature.

  --tol=<tol>                 Iteration tolerance.

  --pmax=<p>                  Largest Lanczos order per node.

  --k=<k>                     topk: number of nodes; truncated: number of
                              spectral terms.

  --m=<m>                     topk: certify the top k within the top m.

  --c=<c>                     Katz or resolvent parameter.

  --alpha=<alpha>             PageRank damping factor.

  --ks=<list>                 compare: comma separated overlap cut-offs.

  --normalise                 Divide scores by their sum.

  --bounds                    rank with exp-quad: add lower, upper and p.

  --order                     topk: refine members until fully ordered.

  --exclude-degree-one        topk: skip nodes with in- and out-degree 1.

  --ritz=<p>                  spectrum: Ritz values of p Lanczos steps.

  --bins=<b>                  spectrum: histogram bins for --ritz.

  -c --config=<path>          Configuration file (INI).

  -v --verbose                Print start and end times to stderr.
"""

import sys
import datetime
from docopt import docopt, DocoptExit

import hubrank.src.rank.proc.common_util.util as util
import hubrank.src.rank.proc.constants.constants as constants
from hubrank import __version__  # Grab version from package __init__.py
from hubrank.src.rank.proc.common_util.util import FileFormatError, HubRankError, NumericalError, ParameterError
from hubrank.src.rank.proc.ranking_run import RankingRun

EXIT_CODES = {
    FileFormatError: constants.ExitCode.MALFORMED_INPUT,
    ParameterError: constants.ExitCode.INVALID_PARAMETER,
    NumericalError: constants.ExitCode.NUMERICAL_FAILURE,
}


def exit_code_for(ex):
    for error, code in EXIT_CODES.items():
        if isinstance(ex, error):
            return code
    return constants.ExitCode.NUMERICAL_FAILURE


def get_stat_and_defs(com_args):
    """
    Pull the subcommand out of the arguments and layer the settings.

    :returns: (settings, Script_status)
    """
    status = None
    for command in constants.Script_status:
        if com_args.pop(command.name.lower(), False):
            status = command

    config = util.get_settings(com_args.get("config"), com_args)
    return config, status


def write_output(text, path=None):
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as writer:
            writer.write(text)
    except OSError as ex:
        raise ParameterError("Can't write {}: {}".format(path, ex))


def main(argv=None):
    """
    :returns: process exit code.
    """
    try:
        com_args = util.sanitise_args(docopt(__doc__, argv=argv, version=__version__))
    except DocoptExit as ex:
        sys.stderr.write("{}\n".format(ex))
        return constants.ExitCode.INVALID_PARAMETER.value

    verbose = com_args.get("verbose", False)
    start = datetime.datetime.now()
    if verbose:
        sys.stderr.write("Script started at: {}\n".format(start))

    try:
        config, status = get_stat_and_defs(com_args)
        run = RankingRun(config, status)
        text = run.run()
        write_output(text, run.run_config.out)
    except HubRankError as ex:
        sys.stderr.write("hubrank: {}\n".format(ex))
        return exit_code_for(ex).value

    if verbose:
        end = datetime.datetime.now()
        sys.stderr.write("Script ended at : {} it ran for : {}\n".format(end, end - start))

    return constants.ExitCode.OK.value


if __name__ == '__main__':

    sys.exit(main())
