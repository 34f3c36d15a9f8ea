# tests/conftest.py

import pytest
from fastapi.testclient import TestClient

from cycletrace.formats import load_fixture
from cycletrace.main import app


@pytest.fixture
def client():
    """Provides a TestClient instance."""
    return TestClient(app)


@pytest.fixture
def butterfly():
    return load_fixture("butterfly")


@pytest.fixture
def dumbbell():
    return load_fixture("dumbbell")


@pytest.fixture
def dipole():
    return load_fixture("dipole")


@pytest.fixture
def k4():
    return load_fixture("k4")


@pytest.fixture
def path3():
    return load_fixture("path3")


@pytest.fixture
def eden12():
    return load_fixture("eden12")
