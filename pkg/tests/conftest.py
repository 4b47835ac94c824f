"""
Shared fixtures and hypothesis profiles for the test suite
"""

import os

import pytest
from hypothesis import HealthCheck, settings as hypothesis_settings
from hypothesis import strategies as st
from loguru import logger

from algebra.octonion import ALPHA, Octonion, scale

hypothesis_settings.register_profile(
    "ci", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
hypothesis_settings.register_profile("dev", max_examples=30, deadline=None)
hypothesis_settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "dev"))


def create_integral_octonion(coordinates) -> Octonion:
    """sum a_i alpha_i for integer alpha-coordinates a_i"""
    total = Octonion.zero()
    for a, alpha in zip(coordinates, ALPHA):
        total = total + scale(alpha, a)
    return total


integral_octonions = st.lists(
    st.integers(min_value=-2, max_value=2), min_size=8, max_size=8
).map(create_integral_octonion)


@pytest.fixture
def log_messages():
    """Messages loguru emits at WARNING and above while the test runs"""
    messages = []
    handler_id = logger.add(lambda message: messages.append(str(message)), level="WARNING")
    yield messages
    logger.remove(handler_id)


@pytest.fixture
def write_table(tmp_path):
    """Write CSV text to a temporary file and return its path"""
    def _write(text: str, name: str = "table.csv") -> str:
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return _write


@pytest.fixture
def synthetic_basis_path() -> str:
    return os.path.join(os.path.dirname(__file__), "..", "data", "example_basis.csv")


@pytest.fixture
def synthetic_rhs_path() -> str:
    return os.path.join(os.path.dirname(__file__), "..", "data", "example_rhs.csv")


@pytest.fixture
def inexact_basis_path() -> str:
    return os.path.join(os.path.dirname(__file__), "..", "data", "example_basis_inexact.csv")
