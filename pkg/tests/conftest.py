"""Shared fixtures for zeckbenford tests."""

import pytest

from zeckbenford.const import BUILTIN_SPECS
from zeckbenford.recurrence import generate_sequence, validate_spec


def _builtin(name):
    coeffs, initial = BUILTIN_SPECS[name]
    return validate_spec(coeffs, initial)


@pytest.fixture
def fibonacci():
    return _builtin("fibonacci")


@pytest.fixture
def example():
    """Coefficients 1,2,3 with initial terms 1,3,8."""
    return _builtin("example")


@pytest.fixture
def canonical_123():
    return _builtin("canonical-123")


@pytest.fixture
def canonical_21():
    return _builtin("canonical-21")


@pytest.fixture
def doubling():
    return _builtin("doubling")


@pytest.fixture
def fib_table(fibonacci):
    return generate_sequence(fibonacci, 40)


@pytest.fixture
def example_table(example):
    return generate_sequence(example, 12)


@pytest.fixture(params=["fibonacci", "canonical-123", "canonical-21"])
def complete_spec(request):
    return _builtin(request.param)
