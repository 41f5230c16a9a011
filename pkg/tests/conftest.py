import numpy as np
import pytest

from nlszp import Field, Grid


@pytest.fixture
def grid_1d() -> Grid:
    return Grid(dim=1, n=256, box_length=16.0)


@pytest.fixture
def grid_3d() -> Grid:
    return Grid(dim=3, n=16, box_length=8.0)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)


def random_field(grid: Grid, rng: np.random.Generator) -> Field:
    values = rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape)
    return Field(grid, values)


def mean_free(f: Field) -> Field:
    return Field(f.grid, f.values - f.values.mean())


@pytest.fixture
def random_field_1d(grid_1d, rng) -> Field:
    return random_field(grid_1d, rng)
