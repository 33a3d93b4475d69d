import sys

import numpy as np
import pytest
from hypothesis import strategies as st

from signomial_mm.signomial import Signomial

coefficients = st.floats(min_value=-5, max_value=5, allow_nan=False).filter(lambda c: abs(c) > 1e-3)
small_exponents = st.integers(min_value=-3, max_value=3).map(float)


@st.composite
def signomials(draw, dimension=None, positive=False, max_terms=5):
    n = dimension or draw(st.integers(1, 3))
    k = draw(st.integers(1, max_terms))
    coef = st.floats(0.1, 5) if positive else coefficients
    terms = [(draw(coef), tuple(draw(small_exponents) for _ in range(n))) for _ in range(k)]
    return Signomial.from_terms(terms, n)


def positive_points(n):
    return st.lists(st.floats(0.2, 5.0), min_size=n, max_size=n).map(np.array)


@pytest.fixture
def rng():
    return np.random.default_rng(0)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.SUMMARY:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(module.SUMMARY):
        terminalreporter.write_line(module.SUMMARY[number])
