"""Thread-safe logging with run-id prefixes and batched timing records."""

import logging
import threading
import time
from collections.abc import Callable
from functools import wraps
from typing import ParamSpec, TypeVar

from src.types.common import TimingRecord

P = ParamSpec("P")
R = TypeVar("R")


class NumericsLogger:
    """Thread-safe logger that also keeps a bounded batch of timing records."""

    _batch_lock: threading.Lock = threading.Lock()

    _VALID_LEVELS: frozenset[str] = frozenset({"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"})

    def __init__(self, name: str = "gausscap", max_records: int = 1000) -> None:
        self.logger = logging.getLogger(name)
        self.max_records = max_records
        self.batch_records: list[TimingRecord] = []

    def configure(self, level: str) -> None:
        """Attach a stderr handler once and set the level."""
        if level.upper() not in self._VALID_LEVELS:
            level = "INFO"
        if not self.logger.handlers:
            handler = logging.StreamHandler()
            handler.setFormatter(logging.Formatter("%(asctime)s %(levelname)s %(message)s"))
            self.logger.addHandler(handler)
        self.logger.setLevel(level.upper())

    def log(self, message: str, level: str = "INFO", run_id: str = "") -> None:
        """Log message with an optional run-id prefix."""
        if level.upper() not in self._VALID_LEVELS:
            level = "INFO"
        prefix = f"[{run_id}] " if run_id else ""
        getattr(self.logger, level.lower())(f"{prefix}{message}")

    def record_timing(self, name: str, duration: float, ok: bool) -> None:
        """Append a timing record, dropping the oldest when the batch is full."""
        with self._batch_lock:
            self.batch_records.append({"name": name, "seconds": duration, "ok": ok})
            if len(self.batch_records) > self.max_records:
                del self.batch_records[0]

    def timings(self) -> list[TimingRecord]:
        """Snapshot of the batched timing records."""
        with self._batch_lock:
            return list(self.batch_records)

    def clear_timings(self) -> None:
        with self._batch_lock:
            self.batch_records.clear()

    def debug(self, message: str, run_id: str = "") -> None:
        """Log at DEBUG level."""
        self.log(message, "DEBUG", run_id=run_id)

    def info(self, message: str, run_id: str = "") -> None:
        """Log at INFO level."""
        self.log(message, "INFO", run_id=run_id)

    def warning(self, message: str, run_id: str = "") -> None:
        """Log at WARNING level."""
        self.log(message, "WARNING", run_id=run_id)

    def error(self, message: str, run_id: str = "") -> None:
        """Log at ERROR level."""
        self.log(message, "ERROR", run_id=run_id)


# Global logger instance
app_logger = NumericsLogger()


def log_performance(func: Callable[P, R]) -> Callable[P, R]:
    """Decorator to log function performance and record its timing."""

    @wraps(func)
    def wrapper(*args: P.args, **kwargs: P.kwargs) -> R:
        start_time = time.perf_counter()
        func_name = f"{func.__module__}.{func.__name__}"

        app_logger.debug(f"Starting {func_name}")
        try:
            result = func(*args, **kwargs)
            duration = time.perf_counter() - start_time
            app_logger.debug(f"Completed {func_name} in {duration:.3f}s")
            app_logger.record_timing(func_name, duration, ok=True)
            return result
        except Exception as e:
            duration = time.perf_counter() - start_time
            app_logger.error(f"Failed {func_name} after {duration:.3f}s: {e!s}")
            app_logger.record_timing(func_name, duration, ok=False)
            raise

    return wrapper
