import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20260826)


def random_hermitian(d, rng):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return (g + g.conj().T) / 2
