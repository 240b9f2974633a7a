"""Shared fixtures for the noncompact-kernels test suite."""

from collections.abc import Callable

import numpy as np
import pytest
from scipy import integrate


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator; every test gets a fresh copy of the same stream."""
    return np.random.default_rng(20240611)


def tabulated_cdf(density: Callable[[np.ndarray], np.ndarray], upper: float, num: int = 200_001) -> Callable:
    """CDF on [0, upper] of an unnormalized density, by cumulative trapezoid on a fine grid."""
    grid = np.linspace(0.0, upper, num)
    values = integrate.cumulative_trapezoid(density(grid), grid, initial=0.0)
    values /= values[-1]
    return lambda x: np.interp(x, grid, values)


@pytest.fixture
def grid_cdf() -> Callable:
    return tabulated_cdf
