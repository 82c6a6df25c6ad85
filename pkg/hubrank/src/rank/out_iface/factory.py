from hubrank.src.rank.out_iface.writers import CsvWriter, JsonWriter
from hubrank.src.rank.proc.common_util.util import ParameterError


class WriterFactory(object):
    """
    Return a result writer for the requested output format.
    """

    WRITER_MAP = {
        'csv': CsvWriter,
        'json': JsonWriter,
    }

    @staticmethod
    def get_writer(output_format, precision="short", base=0):
        """
        :param output_format: 'csv' or 'json'.
        :param precision: 'short' (4 decimals) or 'full' (12 significant digits).
        :param base: index base node ids are printed in.
        :returns: A configured ResultWriter.
        """
        try:
            writer = WriterFactory.WRITER_MAP[output_format]
        except KeyError:
            raise ParameterError("Unknown output format: {}".format(output_format))

        return writer(precision=precision, base=base)
