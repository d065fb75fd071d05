import numpy as np
import pytest

from hypercon.quadrature import build_disk_grid


@pytest.fixture(scope="session")
def grid_cache():
    cache = {}

    def get(alpha, n_r=128, n_theta=256):
        key = (float(alpha), n_r, n_theta)
        if key not in cache:
            cache[key] = build_disk_grid(n_r, n_theta, float(alpha))
        return cache[key]

    return get


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
