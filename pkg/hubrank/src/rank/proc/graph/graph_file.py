import os
import logging

from hubrank.src.rank.proc.common_util.util import FileFormatError, ParameterError

logger = logging.getLogger(__name__)


class GraphFile(object):
    """
    Base class for reading a graph from a file on disk.
    Subclasses implement ``parse(stream)``.
    """

    FILE_FORMAT = None

    def __init__(self, file_path, index_base=0, n=None):
        if index_base not in (0, 1):
            raise ParameterError("Index base must be 0 or 1, got {}".format(index_base))
        self.file_path = file_path
        self.index_base = index_base
        self.n = n
        self.handler_id = None

    def parse(self, stream):
        raise NotImplementedError

    def get_graph(self):
        """
        Open and parse the file.

        :returns: DirectedGraph
        :raises FileFormatError: when the file can't be read or parsed.
        """
        self.handler_id = "{} reader".format(self.FILE_FORMAT)

        if self.file_path is None or not os.path.isfile(self.file_path):
            raise FileFormatError("{} is not a file".format(self.file_path))

        try:
            with open(self.file_path, "r", encoding="utf-8") as stream:
                graph = self.parse(stream)
        except UnicodeDecodeError as ex:
            raise FileFormatError("{} is not UTF-8 text: {}".format(self.file_path, ex))

        logger.info("{} was read using the {}: n={}, m={}".format(
            self.file_path, self.handler_id, graph.n, graph.m))

        return graph

    def __enter__(self):
        return self

    def __exit__(self, *args):
        pass
