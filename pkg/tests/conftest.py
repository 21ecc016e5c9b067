import sys
from pathlib import Path

import pytest

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from config.app_config import AppConfig  # noqa: E402
from core.models import MarkoffTriple, Orientation  # noqa: E402
from core.tree import all_orientations  # noqa: E402

SMALL_BOUND = 13


@pytest.fixture
def root():
    return Orientation(3, 3, 3)


@pytest.fixture
def o336():
    return Orientation(3, 3, 6)


@pytest.fixture
def o3615():
    """M(3,6,15), an orientation of (1,2,5) with m = 39"""
    return Orientation(3, 6, 15)


@pytest.fixture
def small_orientations():
    return all_orientations(SMALL_BOUND)


@pytest.fixture
def triple_125():
    return MarkoffTriple(1, 2, 5)


@pytest.fixture
def config(tmp_path):
    """Config isolated from the user's home directory"""
    return AppConfig(str(tmp_path / "config.json"))


@pytest.fixture(autouse=True)
def isolated_home(tmp_path, monkeypatch):
    """~/.markoff_verifier must never leak into a test"""
    home = tmp_path / "home"
    home.mkdir()
    monkeypatch.setenv("HOME", str(home))
    return home
