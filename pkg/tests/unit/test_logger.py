"""Unit tests for NumericsLogger and log_performance."""

import logging
import re

import pytest

from src.utils.logger import NumericsLogger, app_logger, log_performance


class TestLoggerRunId:
    """Tests for run_id propagation in logger."""

    def test_log_with_run_id_prefixes_message(self, caplog):
        """Log messages include [run_id] prefix when provided."""
        logger = NumericsLogger()
        with caplog.at_level(logging.INFO, logger="gausscap"):
            logger.log("test message", level="INFO", run_id="abc123")

        assert "[abc123]" in caplog.text
        assert "test message" in caplog.text

    def test_log_without_run_id_no_prefix(self, caplog):
        logger = NumericsLogger()
        with caplog.at_level(logging.INFO, logger="gausscap"):
            logger.log("test message", level="INFO")

        assert re.search(r"^\[[^\]]+\]\s", caplog.text, flags=re.M) is None
        assert "test message" in caplog.text

    def test_convenience_methods_accept_run_id(self, caplog):
        """info/debug/warning/error accept and pass through run_id."""
        logger = NumericsLogger()
        with caplog.at_level(logging.DEBUG, logger="gausscap"):
            logger.info("info msg", run_id="run1")
            logger.debug("debug msg", run_id="run2")
            logger.warning("warn msg", run_id="run3")
            logger.error("err msg", run_id="run4")

        for run_id in ("run1", "run2", "run3", "run4"):
            assert f"[{run_id}]" in caplog.text


class TestLoggerLevelValidation:
    """Tests for log level validation."""

    def test_invalid_level_falls_back_to_info(self, caplog):
        logger = NumericsLogger()
        with caplog.at_level(logging.INFO, logger="gausscap"):
            logger.log("test message", level="INVALID")

        assert "test message" in caplog.text

    def test_configure_invalid_level_uses_info(self):
        logger = NumericsLogger(name="gausscap.test-configure")
        logger.configure("LOUD")
        assert logger.logger.level == logging.INFO
        logger.configure("debug")
        assert logger.logger.level == logging.DEBUG
        assert len(logger.logger.handlers) == 1


class TestTimingBatch:
    """Tests for the batched timing records."""

    def test_records_are_bounded(self):
        logger = NumericsLogger(name="gausscap.test-batch", max_records=3)
        for i in range(5):
            logger.record_timing(f"f{i}", 0.1 * i, ok=True)

        names = [record["name"] for record in logger.timings()]
        assert names == ["f2", "f3", "f4"]

    def test_clear_timings(self):
        logger = NumericsLogger(name="gausscap.test-clear")
        logger.record_timing("f", 1.0, ok=False)
        logger.clear_timings()
        assert logger.timings() == []

    def test_timings_returns_snapshot(self):
        logger = NumericsLogger(name="gausscap.test-snapshot")
        logger.record_timing("f", 1.0, ok=True)
        snapshot = logger.timings()
        snapshot.clear()
        assert len(logger.timings()) == 1


class TestLogPerformance:
    """Tests for the log_performance decorator."""

    def test_success_records_timing(self, caplog):
        @log_performance
        def square(x: float) -> float:
            return x * x

        with caplog.at_level(logging.DEBUG, logger="gausscap"):
            assert square(3.0) == 9.0

        record = app_logger.timings()[-1]
        assert record["name"].endswith("square")
        assert record["ok"] is True
        assert "Completed" in caplog.text

    def test_failure_is_logged_and_reraised(self, caplog):
        @log_performance
        def broken() -> None:
            raise RuntimeError("boom")

        with caplog.at_level(logging.ERROR, logger="gausscap"), pytest.raises(RuntimeError):
            broken()

        assert app_logger.timings()[-1]["ok"] is False
        assert "boom" in caplog.text
