import inspect
import logging
import sys

from loguru import logger

from slrsm.core.config import settings


class InterceptHandler(logging.Handler):
    """Forward stdlib logging records (scipy, numpy warnings) to loguru."""

    def emit(self, record: logging.LogRecord) -> None:
        try:
            level: str | int = logger.level(record.levelname).name
        except ValueError:
            level = record.levelno

        # Find caller from where originated the logged message.
        frame, depth = inspect.currentframe(), 0
        while frame:
            filename = frame.f_code.co_filename
            is_logging = filename == logging.__file__
            is_frozen = "importlib" in filename and "_bootstrap" in filename
            if depth > 0 and not (is_logging or is_frozen):
                break
            frame = frame.f_back
            depth += 1

        logger.opt(depth=depth, exception=record.exc_info).log(level, record.getMessage())


def setup_logging(filename: str, verbose: bool = False) -> None:
    """Send INFO (DEBUG when verbose) to stderr and everything to a rotating file under log_dir."""
    logging.basicConfig(handlers=[InterceptHandler()], level=0, force=True)
    logging.captureWarnings(True)

    logger.remove()
    logger.add(
        sys.stderr,
        level="DEBUG" if verbose else settings.log_level,
        format="<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | {message}",
        backtrace=settings.is_dev,
        diagnose=settings.is_dev,
    )
    logger.add(
        settings.log_dir / filename,
        rotation="50 MB",
        compression="zip",
        level="DEBUG",
        backtrace=True,
        diagnose=settings.is_dev,
        enqueue=True,
    )
