from __future__ import annotations

import logging
from logging.handlers import RotatingFileHandler
from pathlib import Path


class RunContextFilter(logging.Filter):
    """Stamps every record with the suite and seed of the current run."""

    def __init__(self) -> None:
        super().__init__()
        self.run = "-"

    def bind(self, suite: str, seed: int) -> None:
        self.run = f"{suite}:{seed}"

    def filter(self, record: logging.LogRecord) -> bool:
        record.run = self.run
        return True


RUN_CONTEXT = RunContextFilter()


def bind_run(suite: str, seed: int) -> None:
    RUN_CONTEXT.bind(suite, seed)


def setup_logging(log_file: str, level: str = "INFO", console_level: str = "WARNING") -> logging.Logger:
    """File gets every check at ``level``; the console only ``console_level`` and up, next to the CLI summary."""
    logger = logging.getLogger("dim_agt")
    if logger.handlers:
        return logger

    log_level = getattr(logging, level.upper(), logging.INFO)
    logger.setLevel(log_level)

    formatter = logging.Formatter(
        fmt="%(asctime)s | %(levelname)s | %(run)s | %(name)s | %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )

    Path(log_file).parent.mkdir(parents=True, exist_ok=True)
    file_handler = RotatingFileHandler(log_file, maxBytes=1_000_000, backupCount=3, encoding="utf-8")
    file_handler.setFormatter(formatter)
    file_handler.setLevel(log_level)

    stream_handler = logging.StreamHandler()
    stream_handler.setFormatter(formatter)
    stream_handler.setLevel(max(log_level, getattr(logging, console_level.upper(), logging.WARNING)))

    for handler in (file_handler, stream_handler):
        handler.addFilter(RUN_CONTEXT)
        logger.addHandler(handler)
    logger.propagate = False
    return logger
