import pytest

from noma_limits.verification import load_golden


@pytest.fixture(scope="session")
def golden() -> dict:
    """Frozen expected values, each recorded with the oracle that produced it."""
    return load_golden()
