"""Unit test configuration: marks every test in this directory."""

import pytest

pytestmark = pytest.mark.unit


@pytest.fixture(autouse=True)
def clear_timing_batch():
    """Drop timing records left by decorated calls in other tests."""
    from src.utils.logger import app_logger

    app_logger.clear_timings()
    yield
    app_logger.clear_timings()
