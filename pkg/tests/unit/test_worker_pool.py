"""Unit tests for the worker pool singleton."""

import threading

from src.services.worker_pool import WorkerPool, get_worker_pool


class TestWorkerPoolSingleton:
    """Tests for singleton construction."""

    def test_returns_same_instance(self):
        assert get_worker_pool() is get_worker_pool()

    def test_size_from_config(self):
        """GAUSSCAP_THREADS=1 in the test environment runs inline."""
        pool = get_worker_pool()
        assert pool.threads == 1
        assert pool._executor is None

    def test_first_call_fixes_size(self):
        pool = get_worker_pool(threads=3)
        assert pool.threads == 3
        assert get_worker_pool(threads=8).threads == 3

    def test_reset_shuts_down_executor(self):
        pool = get_worker_pool(threads=2)
        executor = pool._executor
        assert executor is not None
        WorkerPool._reset()
        assert executor._shutdown
        assert WorkerPool._instance is None

    def test_concurrent_construction(self):
        instances = []

        def build():
            instances.append(get_worker_pool(threads=2))

        workers = [threading.Thread(target=build) for _ in range(8)]
        for worker in workers:
            worker.start()
        for worker in workers:
            worker.join()
        assert all(instance is instances[0] for instance in instances)


class TestOrderedMap:
    """Tests for order preservation."""

    def test_inline(self):
        assert get_worker_pool().map_ordered(lambda x: x * x, range(5)) == [0, 1, 4, 9, 16]

    def test_threaded_keeps_input_order(self):
        pool = get_worker_pool(threads=4)
        seen_threads = set()

        def square(x):
            seen_threads.add(threading.current_thread().name)
            return x * x

        assert pool.map_ordered(square, range(50)) == [x * x for x in range(50)]
        assert all(name.startswith("gausscap") for name in seen_threads)

    def test_imap_is_lazy(self):
        pool = get_worker_pool()
        calls = []

        def record(x):
            calls.append(x)
            return x

        iterator = pool.imap_ordered(record, range(3))
        assert calls == []
        assert next(iter(iterator)) == 0
        assert calls == [0]
