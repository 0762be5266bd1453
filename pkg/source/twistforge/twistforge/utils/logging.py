# Copyright (c) 2025 Twistforge Developers
# SPDX-License-Identifier: BSD 3-Clause

"""Package logger with colored ``[LEVEL]`` prefixes on stderr."""

from __future__ import annotations

import logging
import sys

import colorama

_ROOT_NAME = "twistforge"

_LEVEL_COLORS = {
    logging.DEBUG: colorama.Style.DIM,
    logging.INFO: colorama.Fore.CYAN,
    logging.WARNING: colorama.Fore.YELLOW,
    logging.ERROR: colorama.Fore.RED,
    logging.CRITICAL: colorama.Fore.RED + colorama.Style.BRIGHT,
}

_LEVEL_TAGS = {
    logging.DEBUG: "DEBUG",
    logging.INFO: "INFO",
    logging.WARNING: "WARN",
    logging.ERROR: "ERROR",
    logging.CRITICAL: "ERROR",
}

_configured = False


class _PrefixFormatter(logging.Formatter):
    def format(self, record: logging.LogRecord) -> str:
        tag = _LEVEL_TAGS.get(record.levelno, record.levelname)
        color = _LEVEL_COLORS.get(record.levelno, "")
        message = super().format(record)
        return f"{color}[{tag}]{colorama.Style.RESET_ALL} {message}"


def _configure_root() -> logging.Logger:
    global _configured
    root = logging.getLogger(_ROOT_NAME)
    if not _configured:
        colorama.just_fix_windows_console()
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(_PrefixFormatter("%(message)s"))
        root.addHandler(handler)
        root.setLevel(logging.WARNING)
        root.propagate = False
        _configured = True
    return root


def get_logger(name: str) -> logging.Logger:
    """Return a logger under the ``twistforge`` namespace.

    Args:
        name: Usually ``__name__`` of the calling module.
    """
    _configure_root()
    if name == _ROOT_NAME or name.startswith(_ROOT_NAME + "."):
        return logging.getLogger(name)
    return logging.getLogger(f"{_ROOT_NAME}.{name}")


def set_verbosity(level: int) -> None:
    """Set the level of the package logger (e.g. ``logging.DEBUG``)."""
    _configure_root().setLevel(level)
