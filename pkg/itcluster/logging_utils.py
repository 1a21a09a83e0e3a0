"""Logging utilities for itcluster.

Provides structured logging with JSON-like formatting on standard error.
"""

from datetime import datetime
import json
import logging
import os
from typing import Optional

# Attributes every LogRecord carries; anything else arrived through ``extra=``.
_RESERVED_ATTRS = frozenset(
    vars(logging.LogRecord("", logging.INFO, "", 0, "", None, None))
) | {"message", "asctime", "taskName"}


class JSONishFormatter(logging.Formatter):
    """Custom formatter that outputs log messages in a JSON-like format."""

    def format(self, record: logging.LogRecord) -> str:
        """Format log record as JSON-like string."""
        log_entry = {
            "timestamp": datetime.fromtimestamp(record.created).isoformat(),
            "level": record.levelname,
            "name": record.name,
            "msg": record.getMessage(),
        }

        for key, value in vars(record).items():
            if key not in _RESERVED_ATTRS and not key.startswith("_"):
                log_entry[key] = value

        if record.exc_info:
            log_entry["exception"] = self.formatException(record.exc_info)

        return json.dumps(log_entry, default=str)


def _level_from_env() -> int:
    name = os.getenv("ITC_LOG_LEVEL", "INFO").upper()
    level = logging.getLevelName(name)
    return level if isinstance(level, int) else logging.INFO


def get_logger(name: str, level: Optional[int] = None) -> logging.Logger:
    """
    Get a logger with JSON-like formatting.

    Args:
        name: Logger name (usually __name__)
        level: Optional logging level override; defaults to ``ITC_LOG_LEVEL``
    Returns:
        Configured logger instance
    """
    logger = logging.getLogger(name)

    # Only configure if not already configured
    if not logger.handlers:
        if level is None:
            level = _level_from_env()
        logger.setLevel(level)

        handler = logging.StreamHandler()
        handler.setLevel(level)
        handler.setFormatter(JSONishFormatter())
        logger.addHandler(handler)

        # Prevent propagation to root logger to avoid duplicate messages
        logger.propagate = False
    return logger
