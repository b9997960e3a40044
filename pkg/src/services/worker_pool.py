"""Thread-safe singleton worker pool for grid evaluations."""

import atexit
import threading
from collections.abc import Callable, Iterable, Iterator
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

from src.models.config import get_config
from src.utils.logger import app_logger

T = TypeVar("T")
R = TypeVar("R")


class WorkerPool:
    """Process-wide thread pool; results always come back in input order."""

    _instance: "WorkerPool | None" = None
    _lock: threading.Lock = threading.Lock()

    _executor: ThreadPoolExecutor | None = None
    _threads: int = 1

    def __new__(cls, threads: int | None = None) -> "WorkerPool":
        """Double-checked locking; the first call fixes the pool size."""
        if cls._instance is None:
            with cls._lock:
                if cls._instance is None:
                    cls._instance = super().__new__(cls)
                    cls._threads = max(1, threads or get_config().threads)
                    if cls._threads > 1:
                        cls._executor = ThreadPoolExecutor(
                            max_workers=cls._threads, thread_name_prefix="gausscap"
                        )
                    atexit.register(cls._shutdown_executor)
                    app_logger.debug(f"Worker pool started with {cls._threads} thread(s)")
        return cls._instance

    @classmethod
    def _shutdown_executor(cls) -> None:
        if cls._executor is not None:
            cls._executor.shutdown(wait=False, cancel_futures=True)
            cls._executor = None

    @classmethod
    def _reset(cls) -> None:
        """Reset singleton state for testing. Not for production use."""
        with cls._lock:
            if cls._executor is not None:
                cls._executor.shutdown(wait=True)
            cls._instance = None
            cls._executor = None
            cls._threads = 1

    @property
    def threads(self) -> int:
        return self._threads

    def imap_ordered(self, fn: Callable[[T], R], items: Iterable[T]) -> Iterator[R]:
        """
        Lazily yield fn(item) in input order.

        With a single thread the calls run inline; otherwise they are
        submitted to the executor and yielded as soon as the next index is done.
        """
        if self._executor is None:
            return map(fn, items)
        return self._executor.map(fn, items)

    def map_ordered(self, fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
        return list(self.imap_ordered(fn, items))


def get_worker_pool(threads: int | None = None) -> WorkerPool:
    """Get or create the WorkerPool singleton."""
    return WorkerPool(threads)
