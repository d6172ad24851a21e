"""
Component loggers writing `  [Component] message` lines to stderr.
"""

import logging
import sys

import config

_FORMAT = "  [%(component)s] %(message)s"
_configured = False


class _ComponentFormatter(logging.Formatter):
    def format(self, record: logging.LogRecord) -> str:
        record.component = record.name.rsplit(".", 1)[-1]
        return super().format(record)


def _configure_root() -> None:
    global _configured
    if _configured:
        return
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(_ComponentFormatter(_FORMAT))
    root = logging.getLogger("coherence")
    root.addHandler(handler)
    root.setLevel(config.LOG_CONFIG["level"].upper())
    root.propagate = False
    _configured = True


def get_logger(component: str) -> logging.Logger:
    """Return the logger for a component, e.g. ``get_logger("Propagation")``."""
    _configure_root()
    return logging.getLogger(f"coherence.{component}")


def set_level(level: str) -> None:
    _configure_root()
    logging.getLogger("coherence").setLevel(level.upper())
