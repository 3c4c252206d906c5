import logging
from pathlib import Path

import pytest

from dim_agt.logging_setup import RUN_CONTEXT, bind_run, setup_logging


@pytest.fixture
def fresh_logger():
    logger = logging.getLogger("dim_agt")
    saved = logger.handlers[:]
    logger.handlers.clear()
    yield logger
    for handler in logger.handlers:
        handler.close()
    logger.handlers[:] = saved
    RUN_CONTEXT.run = "-"


def test_records_carry_the_run(tmp_path: Path, fresh_logger: logging.Logger) -> None:
    log_file = tmp_path / "logs" / "dim_agt.log"
    setup_logging(str(log_file), "INFO")
    bind_run("rmatrix", 3)
    logging.getLogger("dim_agt.suites").info("running rmatrix.yang-baxter.L1.p0")
    for handler in fresh_logger.handlers:
        handler.flush()
    text = log_file.read_text(encoding="utf-8")
    assert "| rmatrix:3 | dim_agt.suites | running rmatrix.yang-baxter.L1.p0" in text


def test_console_stays_at_warning(tmp_path: Path, fresh_logger: logging.Logger) -> None:
    setup_logging(str(tmp_path / "a.log"), "DEBUG")
    levels = {type(handler).__name__: handler.level for handler in fresh_logger.handlers}
    assert levels["RotatingFileHandler"] == logging.DEBUG
    assert levels["StreamHandler"] == logging.WARNING
    assert fresh_logger.propagate is False


def test_setup_is_idempotent(tmp_path: Path, fresh_logger: logging.Logger) -> None:
    first = setup_logging(str(tmp_path / "a.log"))
    second = setup_logging(str(tmp_path / "b.log"))
    assert first is second
    assert len(second.handlers) == 2
    assert not (tmp_path / "b.log").exists()
