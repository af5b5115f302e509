# qaffine/utils/logging_config.py

"""
Logging Configuration Module for qaffine

Configures logging for the command-line tool from the Configuration module.
Reports are written to stdout, so console records go to stderr in a short
format; an optional log file receives timestamped records. The library never
configures logging on import.
"""

import logging
import logging.config
from typing import Any, Dict, Optional

from qaffine.utils.configuration import Configuration

CONSOLE_FORMAT = '%(levelname)s %(name)s: %(message)s'
FILE_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

# Loggers of dependencies that are too chatty at DEBUG.
QUIET_LOGGERS = ('lark',)


def _console_handler(level: str) -> Dict[str, Any]:
    return {
        'class': 'logging.StreamHandler',
        'formatter': 'brief',
        'level': level,
        'stream': 'ext://sys.stderr',
    }


def _file_handler(level: str, filename: str) -> Dict[str, Any]:
    return {
        'class': 'logging.FileHandler',
        'formatter': 'timestamped',
        'level': level,
        'filename': filename,
        'encoding': 'utf-8',
    }


def setup_logging(level: Optional[str] = None) -> None:
    """
    Sets up logging from the 'logging_level', 'log_format' and 'log_file'
    settings.

    Args:
        level (Optional[str]): Overrides the configured 'logging_level',
            e.g. the value of --log-level.
    """
    logging_level = (level or Configuration.get('logging_level') or 'WARNING').upper()
    log_file = Configuration.get('log_file')

    handlers = {'console': _console_handler(logging_level)}
    if log_file:
        handlers['file'] = _file_handler(logging_level, log_file)

    logging.config.dictConfig({
        'version': 1,
        'disable_existing_loggers': False,
        'formatters': {
            'brief': {'format': Configuration.get('log_format') or CONSOLE_FORMAT},
            'timestamped': {'format': FILE_FORMAT, 'datefmt': '%Y-%m-%d %H:%M:%S'},
        },
        'handlers': handlers,
        'loggers': {name: {'level': 'WARNING'} for name in QUIET_LOGGERS},
        'root': {'handlers': list(handlers), 'level': logging_level},
    })
    logging.getLogger(__name__).debug(f"Logging set up at level {logging_level}.")
