"""Integration test configuration: Fock-oracle and end-to-end CLI runs."""

import pytest

pytestmark = [pytest.mark.integration, pytest.mark.slow]


@pytest.fixture(scope="session")
def oracle_cutoff():
    """Cutoff used for one-mode oracle comparisons."""
    return 60


@pytest.fixture(scope="session")
def joint_cutoff():
    """Cutoff per mode for joint-state (exchange entropy) comparisons."""
    return 30
