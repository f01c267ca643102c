"""
Pytest configuration file for qqpft tests.
"""

import sys
from pathlib import Path

import pytest

# Add the project root to Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from algebra.signal import Grid2D, QSignal2D, sample_function  # noqa: E402
from models import GaussianSpec, QPFTParams, QQPFTParams, RandomSpec  # noqa: E402


def _make_params(mu1, mu2=None) -> QQPFTParams:
    mu2 = mu1 if mu2 is None else mu2
    return QQPFTParams(mu1=QPFTParams(**dict(zip("abcde", mu1))), mu2=QPFTParams(**dict(zip("abcde", mu2))))


# Every phase term switched on at least once, b of both signs
PARAMETER_SETS = [
    ((0, 1, 0, 0, 0), (0, 1, 0, 0, 0)),
    ((1, 2, 0, 1, 0), (0, 1, 1, 0, 1)),
    ((1, -1, 1, 1, 1), (1, 2, 1, 0, 0)),
    ((0, -1, 0, 0, 0), (1, -1, 0, 1, 1)),
]


@pytest.fixture(params=PARAMETER_SETS, ids=lambda p: f"mu1={p[0]}-mu2={p[1]}")
def params(request) -> QQPFTParams:
    return _make_params(*request.param)


@pytest.fixture
def make_params():
    """Build QQPFTParams from two (a, b, c, d, e) tuples; mu2 defaults to mu1"""
    return _make_params


@pytest.fixture
def grid16() -> Grid2D:
    return Grid2D.from_extent(16, 20.0)


@pytest.fixture
def random_signal(grid16) -> QSignal2D:
    return sample_function(grid16, RandomSpec(seed=3))


@pytest.fixture
def other_signal(grid16) -> QSignal2D:
    return sample_function(grid16, RandomSpec(seed=4))


@pytest.fixture
def fine_grid() -> Grid2D:
    """L = 16, N = 128: integer shifts of one unit stay on the grid"""
    return Grid2D.from_extent(128, 16.0)


@pytest.fixture
def unit_gaussian(fine_grid) -> QSignal2D:
    return sample_function(fine_grid, GaussianSpec(k1=0.5, k2=0.5))


@pytest.fixture
def fine_random(fine_grid) -> QSignal2D:
    """Seeded random signal resolved in both space and frequency"""
    return sample_function(fine_grid, RandomSpec(seed=3))
