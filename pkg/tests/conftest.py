import numpy as np
import pytest

from spdgig.distributions import make_rng, random_spd


@pytest.fixture
def rng():
    return make_rng(12345)


@pytest.fixture
def spd_pair(rng):
    def make(r, kappa_max=1e4):
        return random_spd(r, rng, kappa_max), random_spd(r, rng, kappa_max)

    return make


def random_symmetric(r, rng):
    h = rng.standard_normal((r, r))
    return (h + h.T) / 2.0


@pytest.fixture
def sym_direction(rng):
    return lambda r: random_symmetric(r, rng)
