import numpy as np
import pytest

from hdscene import CodebookSet

N = 1000
MASTER_SEED = 7


@pytest.fixture(scope="session")
def cbs():
    """Paper-sized codebook set (7, 10, 3, 3) at N=1000, pinned seed."""
    return CodebookSet.generate(N, seed=MASTER_SEED)


@pytest.fixture(scope="session")
def tiny_cbs():
    """Small set for cheap structural tests."""
    return CodebookSet.generate(64, sizes=(3, 4, 2, 2), seed=5)


@pytest.fixture()
def rng():
    return np.random.default_rng(123)
