"""
Shared fixtures for the citer test suite
"""

import tempfile
from pathlib import Path

import pytest

from citer.core.continuation import ContourSpec
from citer.core.series import CharacterTable, from_character, zeta_model
from citer.utils.config import QuadratureConfig


@pytest.fixture
def temp_dir():
    """Create temporary directory for tests"""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield Path(tmpdir)


@pytest.fixture
def cfg():
    """Default quadrature settings"""
    return QuadratureConfig()


@pytest.fixture
def contour():
    return ContourSpec()


@pytest.fixture
def chi4():
    """The real character mod 4"""
    return CharacterTable.from_values([1, 0, -1, 0])


@pytest.fixture
def riemann():
    return zeta_model()


@pytest.fixture
def chi4_model(chi4):
    return from_character(chi4)


@pytest.fixture(autouse=True)
def _isolated_environment(monkeypatch):
    """Keep user configuration out of the tests"""
    for name in (
        "CITER_CONFIG", "CITER_REL_TOL", "CITER_MAX_LEVEL", "CITER_TAIL_CUTOFF",
        "CITER_CIRCLE_RADIUS", "CITER_CIRCLE_POINTS", "CITER_SIEVE_CAP",
        "CITER_CONTOUR_DELTA", "CITER_COMULT_TERMS", "CITER_SEED", "CITER_WORKERS",
    ):
        monkeypatch.delenv(name, raising=False)
