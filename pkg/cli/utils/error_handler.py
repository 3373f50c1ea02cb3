import sys

from loguru import logger

from slrsm.core.errors import ConfigError, PhaseError, SlrsmError

EXIT_CONFIG = 2
EXIT_PIPELINE = 1
EXIT_UNEXPECTED = 70


def error_handler(error: Exception) -> int:
    """Report a failed command and return its exit code."""
    if isinstance(error, ConfigError):
        message, code = error.detail, EXIT_CONFIG
    elif isinstance(error, SlrsmError):
        message, code = error.detail, EXIT_PIPELINE
        if isinstance(error, PhaseError):
            logger.opt(exception=error.__cause__).debug(f"Phase {error.phase} traceback")
    else:
        logger.exception("Unexpected error occurred")
        message, code = f"Unexpected error: {error}", EXIT_UNEXPECTED

    sys.stderr.write(f"slrsm: {message}\n")
    return code
