"""Logging setup shared by every ASN Maker component.

Component loggers live under the ``asn_maker`` namespace
(``get_logger("asn.backbone")`` is ``asn_maker.asn.backbone``). The command
line calls :func:`setup_logging` once with the configured level and optional
log file; long pipeline runs can rotate that file by size.
"""

import logging
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

logger = logging.getLogger("asn_maker")

DEFAULT_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

_PLACEHOLDERS = {
    "{time}": "%(asctime)s",
    "{level}": "%(levelname)s",
    "{name}": "%(name)s",
    "{message}": "%(message)s",
}
_SIZE_UNITS = {"B": 1, "KB": 1024, "MB": 1024**2, "GB": 1024**3}
_ROTATED_BACKUPS = 5


def _resolve_level(level: int, log_level: Optional[Union[str, int]]) -> int:
    if log_level is None:
        return level
    if isinstance(log_level, int):
        return log_level
    # Unknown names raise AttributeError
    return int(getattr(logging, log_level.upper()))


def _formatter(format_string: Optional[str]) -> logging.Formatter:
    if not format_string:
        return logging.Formatter(DEFAULT_FORMAT, datefmt=DATE_FORMAT)
    for placeholder, attribute in _PLACEHOLDERS.items():
        format_string = format_string.replace(placeholder, attribute)
    return logging.Formatter(format_string)


def rotation_bytes(rotation: str) -> Optional[int]:
    """Size in bytes for a rotation setting such as ``"10 MB"``; None if unparseable."""
    try:
        amount, unit = rotation.split()
        return int(float(amount) * _SIZE_UNITS[unit.upper()])
    except (ValueError, KeyError):
        return None


def _file_handler(log_file: Union[str, Path], rotation: Optional[str]) -> logging.Handler:
    path = Path(log_file)
    path.parent.mkdir(parents=True, exist_ok=True)
    max_bytes = rotation_bytes(rotation) if rotation else None
    if max_bytes:
        return RotatingFileHandler(path, maxBytes=max_bytes, backupCount=_ROTATED_BACKUPS)
    return logging.FileHandler(path)


def setup_logging(
    level: int = logging.INFO,
    log_level: Optional[Union[str, int]] = None,
    log_file: Optional[Union[str, Path]] = None,
    rotation: Optional[str] = None,
    format_string: Optional[str] = None,
) -> None:
    """Configure the root logger with a stderr handler and an optional file.

    Args:
        level: Numeric level, used when ``log_level`` is not given
        log_level: Level name such as ``"DEBUG"`` or a numeric level
        log_file: Log file path; parent directories are created
        rotation: Rotate the log file at this size (e.g. ``"1 MB"``)
        format_string: Record format; ``{time}``, ``{level}``, ``{name}`` and
            ``{message}`` are accepted alongside ``%``-style fields
    """
    level = _resolve_level(level, log_level)
    formatter = _formatter(format_string)

    root = logging.getLogger()
    for old in root.handlers[:]:
        root.removeHandler(old)
    root.setLevel(level)

    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(_file_handler(log_file, rotation))
    for handler in handlers:
        handler.setLevel(level)
        handler.setFormatter(formatter)
        root.addHandler(handler)

    # Loggers created at import time keep their own level otherwise
    logger.setLevel(level)
    for name in list(logging.Logger.manager.loggerDict):
        if name.startswith("asn_maker."):
            logging.getLogger(name).setLevel(level)

    logger.debug(f"Logging at {logging.getLevelName(level)}")


def get_logger(name: str) -> logging.Logger:
    """Component logger ``asn_maker.<name>`` at the current package level."""
    component = logging.getLogger(f"asn_maker.{name}")
    component.setLevel(logger.level)
    return component


def log_error_with_context(exception: Exception, context: Dict[str, Any]) -> None:
    """Log an exception followed by ``key=value`` pairs describing where it happened."""
    details = " ".join(f"{key}={value}" for key, value in context.items())
    logger.error(f"{type(exception).__name__}: {exception} [{details}]")
