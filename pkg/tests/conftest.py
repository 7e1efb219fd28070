import numpy as np
import pytest

from phasestab.grid import GridSpec


@pytest.fixture(scope="session")
def grid_1d():
    """Default 1-D working grid: T=16, N=1024, dx=1/32."""
    return GridSpec.uniform(1, 16.0, 1024)


@pytest.fixture(scope="session")
def grid_2d():
    """Default 2-D test grid: T=8, N=256 per axis."""
    return GridSpec.uniform(2, 8.0, 256)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
