import numpy as np
import pytest

from src.explicit_solutions import example44_disk
from src.grid_field import ComplexField, PolarGrid


@pytest.fixture
def small_grid():
    return PolarGrid(1.0, 16, 32)


@pytest.fixture
def grid():
    return PolarGrid(1.0, 32, 64)


@pytest.fixture
def explicit_disk():
    """Second component of z ↦ (z, u(Re z)) for b = 0.01, α = ½, where u = (x + 0.1)² right of −0.1."""
    _, f = example44_disk(0.01, 0.5, n_r=64, n_t=128)
    return f


@pytest.fixture
def holomorphic_field(grid):
    return ComplexField.sample(grid, lambda z: z + 2.0)


@pytest.fixture
def rng():
    return np.random.default_rng(0)
