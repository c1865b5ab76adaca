from pathlib import Path

import pytest

from hl_prover.hierarchy import load_env_file

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def structures_env():
    """Sealed environment of the structure hierarchy fixture"""
    return load_env_file(FIXTURES / "structures.hl")
