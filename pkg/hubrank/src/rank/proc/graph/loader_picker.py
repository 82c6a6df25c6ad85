import os

from hubrank.src.rank.proc.common_util.util import ParameterError
from hubrank.src.rank.proc.graph import (
    adjacency_list_file,
    edge_list_file,
    matrix_market_file
)


class LoaderPicker(object):
    """
    Returns a graph reader class for the supplied file.
    """

    FORMAT_MAP = {
        'edgelist': edge_list_file.EdgeListFile,
        'mtx': matrix_market_file.MatrixMarketFile,
        'adjlist': adjacency_list_file.AdjacencyListFile,
    }

    EXTENSION_MAP = {
        '.mtx': matrix_market_file.MatrixMarketFile,
        '.adj': adjacency_list_file.AdjacencyListFile,
        '.edges': edge_list_file.EdgeListFile,
        '.el': edge_list_file.EdgeListFile,
        '.txt': edge_list_file.EdgeListFile,
        '.tsv': edge_list_file.EdgeListFile,
    }

    def pick_best_loader(self, filename, declared_format=None):
        """
        :param filename: the file to be read.
        :param declared_format: 'edgelist', 'mtx', 'adjlist', or None / 'auto'
            to decide from the extension and the first line.
        :returns: A GraphFile subclass.
        """
        if declared_format and declared_format != 'auto':
            try:
                loader = self.FORMAT_MAP[declared_format]
            except KeyError:
                raise ParameterError("Unknown input format: {}".format(declared_format))

        else:
            extension = os.path.splitext(filename)[1].lower()
            loader = self.EXTENSION_MAP.get(extension)

            if loader is None:
                # Fall back on the banner line, edge list otherwise.
                try:
                    with open(filename, 'r', encoding='utf-8') as reader:
                        header = reader.readline()
                except (OSError, UnicodeDecodeError):
                    header = ''

                if header.lower().startswith(matrix_market_file.MM_BANNER):
                    loader = matrix_market_file.MatrixMarketFile
                else:
                    loader = edge_list_file.EdgeListFile

        return loader
