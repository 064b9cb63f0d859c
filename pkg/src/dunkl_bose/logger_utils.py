import logging
import sys

import structlog


def configure_logging(level: str = "WARNING") -> None:
    """Send structlog events to stderr, dropping everything below `level`."""

    structlog.configure(
        processors=[
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.dev.ConsoleRenderer(colors=False),
        ],
        wrapper_class=structlog.make_filtering_bound_logger(
            logging.getLevelName(level.upper())
        ),
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )


def get_logger(cls: str):
    return structlog.get_logger().bind(cls=cls)
