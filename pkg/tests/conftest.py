import numpy as np
import pytest
from hypothesis import strategies as st

from grunsky_lab.series import TruncatedSeries


def random_normalized(rng, order=12, scale=1.0):
    a = (rng.uniform(-1, 1, order - 1) + 1j * rng.uniform(-1, 1, order - 1)) * scale
    return TruncatedSeries.from_normalized(a, order=order)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def koebe():
    return TruncatedSeries([0] + list(range(1, 13)))


@pytest.fixture
def odd_koebe():
    # z / (1 - z^2)
    return TruncatedSeries([0] + [1 if k % 2 else 0 for k in range(1, 13)])


def _clip(z, bound):
    r = abs(z)
    return z if r <= bound else z * (bound / r)


def complex_coeffs(n, bound=1.0):
    """Lists of n complex numbers with modulus <= bound."""
    part = st.floats(-bound, bound, allow_nan=False, allow_infinity=False)
    z = st.builds(lambda x, y: _clip(complex(x, y), bound), part, part)
    return st.lists(z, min_size=n, max_size=n)


@st.composite
def normalized_series(draw, order=8):
    return TruncatedSeries.from_normalized(draw(complex_coeffs(order - 1)), order=order)
