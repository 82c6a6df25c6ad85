from .src.rank import (
    cmdline,
    out_iface,
    proc
)

from importlib.metadata import version, PackageNotFoundError

try:
    __version__ = version("hubrank")
except PackageNotFoundError:
    __version__ = "0.1.0"
