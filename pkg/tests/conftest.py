import random

import pytest

from schober.config.config import TestingConfig
from schober.core.arith import identity, is_invertible, mat, matmul
from schober.models.disk import GMVData, GMVPoint, TwistPresentation
from schober.models.git_flop import build_flop_model


@pytest.fixture
def rng():
    return random.Random(TestingConfig.FUZZ_SEED)


@pytest.fixture(scope='session')
def conifold():
    return build_flop_model(1)


def random_matrix(rng, rows, cols, bound=2):
    return mat([[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)], ncols=cols)


def random_twist(rng, n, k=None, bound=2):
    """u, v with 1 - v u invertible"""
    k = rng.randint(1, n) if k is None else k
    while True:
        u, v = random_matrix(rng, k, n, bound), random_matrix(rng, n, k, bound)
        if is_invertible(identity(n) - matmul(v, u)):
            return TwistPresentation(u=u, v=v)


def random_gmv(rng, points=3, max_dim=4):
    n = rng.randint(1, max_dim)
    twists = [random_twist(rng, n, rng.randint(1, max_dim), bound=1) for _ in range(points)]
    return GMVData(n, tuple(GMVPoint(t.local_dim, t.u, t.v) for t in twists))


def random_invertible(rng, n, bound=2):
    while True:
        m = random_matrix(rng, n, n, bound)
        if is_invertible(m):
            return m
