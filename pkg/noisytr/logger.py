from loguru import logger
import sys
import os


def setup_logger(settings):
    logger.remove()  # Remove default handler

    # stdout carries the JSON result line, so console logs go to stderr
    logger.add(
        sys.stderr,
        format="{level} | {file} | {line} | {message}",
        level=settings.LOG_LEVEL
    )

    if settings.LOG_TO_FILE:
        os.makedirs(settings.LOG_DIR, exist_ok=True)
        logger.add(
            f"{settings.LOG_DIR}/{settings.APP_NAME}.log",
            format="{time:YYYY-MM-DD HH:mm:ss.SSS} | {level} | {file} | {line} | {message}",
            rotation="00:00",  # Rotates every midnight
            retention="30 days",
            compression=None,
            level=settings.LOG_LEVEL,
            enqueue=True,  # Async logging
            backtrace=settings.DEBUG,
            diagnose=settings.DEBUG,  # variable values in tracebacks
        )
    return logger
