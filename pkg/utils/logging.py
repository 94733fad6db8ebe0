"""Logging helpers.

Library modules log through ``get_logger(__name__)``; only the CLI installs a
handler, and it writes to stderr so stdout stays a clean record stream.
"""

import logging
import sys

_FORMAT = "%(levelname)s %(name)s: %(message)s"
_ROOT = "linkage"


def get_logger(name: str) -> logging.Logger:
    """
    Return a logger below the package root.

    Args:
        name: Usually ``__name__`` of the calling module

    Returns:
        Logger named ``linkage.<name>``
    """
    return logging.getLogger(f"{_ROOT}.{name}")


def configure_logging(level: str = "WARNING") -> None:
    """
    Install a single stderr handler on the package root logger.

    Args:
        level: Level name such as ``"INFO"`` or ``"DEBUG"``
    """
    root = logging.getLogger(_ROOT)
    for handler in list(root.handlers):
        root.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(_FORMAT))
    root.addHandler(handler)
    root.setLevel(level.upper())
    root.propagate = False
