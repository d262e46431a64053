"""
Logging configuration: one stderr handler on the root logger.
Standard output is left to reports.
"""

import logging
import sys

import config


def setup_logging(level=None):
    """
    Install the stderr handler and set the root level.

    Calling it again replaces the handler instead of adding a second one.

    Args:
        level (str, optional): Level name; defaults to config.LOG_LEVEL
    """
    level = (level or config.LOG_LEVEL).upper()
    numeric = getattr(logging, level, None)
    if not isinstance(numeric, int):
        numeric = logging.WARNING

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(config.LOG_FORMAT, config.LOG_DATE_FORMAT, style="{"))

    root = logging.getLogger()
    for old in [h for h in root.handlers if getattr(h, "_planecong", False)]:
        root.removeHandler(old)
    handler._planecong = True
    root.addHandler(handler)
    root.setLevel(numeric)
    return root
