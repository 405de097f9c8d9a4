import numpy as np
import pytest

from leblab import KernelParams


@pytest.fixture
def cheap_params():
    return KernelParams(1.0, 0.5, 0.25)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def sup_on_grid(fn, m=1024):
    import math

    grid = np.linspace(0.0, 2.0 * math.pi, m, endpoint=False)
    return float(np.max(np.abs(fn(grid))))
