import numpy as np
import pytest

from signomial_mm.benchmarks import TABLE1, f1, objective
from signomial_mm.driver import SolverConfig, mm_step
from signomial_mm.oracles import (
    CLOSED_FORM_NAMES,
    GridSpec,
    closed_form_updates,
    finite_difference_gradient,
    grid_minimize,
)


def test_grid_minimum_of_f1():
    x, value = grid_minimize(f1, GridSpec.uniform(0.5, 3.0, 400, 2))
    assert value == pytest.approx(3.4128, abs=1e-3)
    assert np.allclose(x, 1.431, atol=1e-2)


def test_grid_generic_callable_agrees_with_fast_path():
    grid = GridSpec.uniform(0.5, 3.0, 40, 2)
    fast = grid_minimize(f1, grid)
    slow = grid_minimize(lambda x: f1(x), grid)
    assert fast[1] == pytest.approx(slow[1])


def test_grid_limits():
    with pytest.raises(ValueError):
        grid_minimize(lambda x: 0.0, GridSpec.uniform(0.5, 3.0, 2, 5))
    with pytest.raises(ValueError):
        grid_minimize(lambda x: 0.0, GridSpec.uniform(0.5, 3.0, 100, 4))
    with pytest.raises(ValueError):
        GridSpec(((0.0, 1.0, 10),))


@pytest.mark.parametrize("row", [r for r in TABLE1 if r.name in CLOSED_FORM_NAMES], ids=lambda r: f"{r.name}{r.x0}")
def test_closed_forms_match_generic_update(row):
    f = objective(row.name)
    x = y = np.array(row.x0, dtype=float)
    for _ in range(5):
        x = mm_step(f, x, SolverConfig())[0]
        y = closed_form_updates(row.name, y)
        assert np.allclose(x, y, rtol=1e-8)


def test_finite_differences():
    g = finite_difference_gradient(lambda x: x[0] ** 2 * x[1], np.array([2.0, 3.0]))
    assert np.allclose(g, (12.0, 4.0), rtol=1e-7)
    with pytest.raises(ValueError):
        finite_difference_gradient(lambda x: x[0], np.array([1e-7]), h=1e-6)
