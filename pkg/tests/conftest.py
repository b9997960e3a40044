"""Shared test fixtures for gausscap."""

import math
import os
from unittest.mock import patch

import numpy as np
import pytest

# Bits and a single worker unless a test says otherwise; set before config is built
os.environ["GAUSSCAP_LOG_BASE"] = "2"
os.environ.setdefault("GAUSSCAP_THREADS", "1")


@pytest.fixture(autouse=True)
def _reset_singletons_between_tests():
    """Reset config and worker pool singletons between tests for isolation."""
    from src.models.config import reset_config
    from src.services.worker_pool import WorkerPool

    reset_config()
    WorkerPool._reset()
    yield
    WorkerPool._reset()
    reset_config()


@pytest.fixture
def nats_config():
    """Configuration with natural logarithms."""
    with patch.dict(os.environ, {"GAUSSCAP_LOG_BASE": "e"}):
        from src.models.config import get_config, reset_config

        reset_config()
        yield get_config()
        reset_config()


@pytest.fixture
def canonical_one_mode():
    """Canonical commutation matrix of one mode, hbar = 1."""
    from src.services.symplectic import canonical_form

    return canonical_form(1)


@pytest.fixture
def canonical_two_mode():
    from src.services.symplectic import canonical_form

    return canonical_form(2)


@pytest.fixture
def thermal_one():
    """One-mode thermal state with N = 1."""
    from src.services.gaussian_state import thermal_state

    return thermal_state(1.0)


@pytest.fixture
def attenuator():
    """Pure-loss channel with k = 0.8."""
    from src.services.gaussian_channel import one_mode_channel

    return one_mode_channel(0.8, 0.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def g_bits():
    """Reference g(x) in bits, straight from the definition."""

    def _g(x: float) -> float:
        if x == 0:
            return 0.0
        return ((x + 1) * math.log(x + 1) - x * math.log(x)) / math.log(2)

    return _g
