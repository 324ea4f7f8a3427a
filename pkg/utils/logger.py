from loguru import logger
import os
import sys
import tempfile

LOG_FORMAT = (
    "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level:7}</level> | "
    "<cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>"
)
LOG_FILE_NAME = "lapint.log"


def _get_candidate_log_dirs():
    """Return writable-preferred directories in fallback order."""
    candidates = []

    home = os.path.expanduser("~")
    if home and home != "~":
        candidates.append(os.path.join(home, ".lapint", "logs"))
    candidates.append(".")

    # Final fallback for any environment.
    candidates.append(tempfile.gettempdir())

    # De-duplicate while preserving order.
    seen = set()
    unique_candidates = []
    for path in candidates:
        if path and path not in seen:
            seen.add(path)
            unique_candidates.append(path)
    return unique_candidates


def setup_logger(level=None, file_sink=False, rotation="10 MB"):
    """(Re)configure loguru sinks; returns the log file path or None.

    stdout carries command output, so diagnostics only ever go to stderr
    and, when ``file_sink`` is set, to a rotating file.
    """
    level = (level or os.getenv("LAPINT_LOG_LEVEL") or "WARNING").upper()
    logger.remove()

    if sys.stderr is not None:
        logger.add(sys.stderr, format=LOG_FORMAT, level=level)

    if not file_sink:
        return None

    for log_dir in _get_candidate_log_dirs():
        try:
            os.makedirs(log_dir, exist_ok=True)
            path = os.path.join(log_dir, LOG_FILE_NAME)
            logger.add(path, rotation=rotation, level="DEBUG")
            return path
        except Exception:
            continue
    logger.warning("No writable log directory found; file logging disabled")
    return None


setup_logger()
