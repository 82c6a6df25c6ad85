"""
Shared helpers: configuration layering, logging set-up and the exception
hierarchy used across hubrank.
"""

import os
import logging
from configparser import ConfigParser

log_levels = {"debug": logging.DEBUG,
              "info": logging.INFO,
              "warning": logging.WARNING,
              "error": logging.ERROR,
              "critical": logging.CRITICAL
              }

logger = logging.getLogger(__name__)

DEFAULT_CONF_PATH = os.path.normpath(
    os.path.join(os.path.dirname(__file__), "../../../../config/hubrank.ini"))


class HubRankError(Exception):
    """
    Base class for every error hubrank raises on purpose.
    """


class FileFormatError(HubRankError):
    """
    Input file is malformed or in an unsupported layout.
    """


class ParameterError(HubRankError, ValueError):
    """
    A parameter is outside its admissible range.
    """


class NumericalError(HubRankError, ArithmeticError):
    """
    A numerical kernel failed (non-finite values, no convergence where
    convergence is required).
    """


def sanitise_args(config):
    """
    Sanitise command-line configuration.

    :param config: Config dictionary (from docopt)
    :returns: Config dictionary with all keys stripped of '<' '>' and '--'
    """
    sane_conf = {}
    for key, value in config.items():
        if value is None or value is False:
            continue
        key = key.lstrip("-><").rstrip("><")
        sane_conf[key] = value

    return sane_conf


def cfg_read(filename):
    """
    Reads configuration file into a dictionary.

    :param filename: Path to the INI configuration file.
    :returns: Dict containing parsed ini conf.
    """
    config = ConfigParser(interpolation=None)
    if not config.read(filename):
        raise ParameterError("Can't read configuration file {}".format(os.path.abspath(filename)))

    conf = {}
    for section in config.sections():
        conf[section] = {
            option: config.get(section, option).replace("\"", "")
            for option in config.options(section)
        }

    return conf


def get_settings(conf_path, args):
    """
    Layer the configuration.

    Configuration priority: DEFAULTS < CONF_FILE < ARGS

    :param conf_path: Path to the INI file, None for the packaged default.
    :param args: Sanitised command-line arguments.
    :returns: Dict with one entry per INI section plus the flat arguments.
    """
    settings = {
        "core": {"log-path": "", "log-level": "warning",
                 "format": "[%(levelname)s] %(asctime)s (%(name)s) %(message)s"},
    }

    conf_file = cfg_read(conf_path or DEFAULT_CONF_PATH)
    for section, options in conf_file.items():
        settings.setdefault(section, {}).update(options)

    settings.update(args)

    return settings


def setup_logging(core_conf):
    """
    Configure the root logger from the [core] section.

    :param core_conf: Dict with 'log-path', 'log-level' and 'format'.
    """
    log_path = core_conf.get("log-path") or None
    level = log_levels.get(core_conf.get("log-level", "warning").lower(), logging.WARNING)

    logging.basicConfig(filename=log_path,
                        format=core_conf.get("format"),
                        level=level)


def as_bool(value):
    """
    Interpret an INI flag.
    """
    if isinstance(value, bool):
        return value
    return str(value).strip().lower() in ("1", "true", "yes", "on")
