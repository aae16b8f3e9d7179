import cmath
import sys
import math

import numpy as np
import pytest
from hypothesis import strategies as st

from gaborfusion.complex_core import indicator
from gaborfusion.fusion import build_gabor_fusion


def example_rows():
    """Window rows 1_{1,2,4}/sqrt(3) and 1_{3} in C^7 (0-based positions)."""
    return np.array([indicator(7, [1, 2, 4]) / np.sqrt(3), indicator(7, [3])])


@pytest.fixture(scope="session")
def example_frame():
    return build_gabor_fusion(example_rows(), 1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


def crandn(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


# ---- pure-Python oracles, independent of the numpy code paths ----

def oracle_dft(x):
    n = len(x)
    return [sum(x[k] * cmath.exp(-2j * math.pi * m * k / n) for k in range(n)) for m in range(n)]


def oracle_tf_shift(x, k, l):
    n = len(x)
    return [cmath.exp(-2j * math.pi * l * t / n) * x[(t - k) % n] for t in range(n)]


def oracle_inner(x, y):
    return sum(a * b.conjugate() for a, b in zip(x, y))


finite = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False, allow_infinity=False)


@st.composite
def complex_vectors(draw, min_size=1, max_size=12, size=None):
    n = size if size is not None else draw(st.integers(min_size, max_size))
    re = draw(st.lists(finite, min_size=n, max_size=n))
    im = draw(st.lists(finite, min_size=n, max_size=n))
    return np.array(re) + 1j * np.array(im)


@st.composite
def vector_pairs(draw, max_size=10):
    n = draw(st.integers(1, max_size))
    return draw(complex_vectors(size=n)), draw(complex_vectors(size=n))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for key in sorted(results, key=lambda k: int(k.split()[0][2:])):
            terminalreporter.write_line(results[key])
