"""
Logger utility for frontal-lab
"""
import logging
import sys
from typing import Optional

ROOT_LOGGER = "frontal-lab"

_CONSOLE_FORMAT = "%(asctime)s | %(levelname)-8s | %(message)s"
_FILE_FORMAT = "%(asctime)s | %(levelname)-8s | %(name)s | %(message)s"


def setup_logger(
    name: str = ROOT_LOGGER,
    level: Optional[int] = None,
    log_file: Optional[str] = None,
) -> logging.Logger:
    """Set up and return a logger instance

    Handlers are attached once to the root ``frontal-lab`` logger; module
    loggers (``frontal-lab.<module>``) propagate to it.

    Args:
        name: Logger name, a child of ``frontal-lab`` for module loggers
        level: Console level override (e.g. logging.WARNING for --quiet)
        log_file: Optional path of a DEBUG log file

    Returns:
        The named logger
    """
    root = logging.getLogger(ROOT_LOGGER)
    root.setLevel(logging.DEBUG)

    console = next((h for h in root.handlers if getattr(h, "_frontal_console", False)), None)
    if console is None:
        console = logging.StreamHandler(sys.stderr)
        console.setLevel(logging.INFO)
        console.setFormatter(logging.Formatter(_CONSOLE_FORMAT, datefmt="%H:%M:%S"))
        console._frontal_console = True
        root.addHandler(console)
    if level is not None:
        console.setLevel(level)

    if log_file is not None:
        file_handler = logging.FileHandler(log_file)
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(logging.Formatter(_FILE_FORMAT))
        root.addHandler(file_handler)

    if name == ROOT_LOGGER or name.startswith(ROOT_LOGGER + "."):
        return logging.getLogger(name)
    return logging.getLogger(f"{ROOT_LOGGER}.{name}")


logger = setup_logger()
