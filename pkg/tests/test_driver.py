import numpy as np
import pytest

from signomial_mm.benchmarks import TABLE1_CONFIG, UNCONSTRAINED, f1, objective
from signomial_mm.driver import (
    ACCELERATED,
    CONVERGED,
    DIVERGED,
    SolverConfig,
    iterate_map,
    relative_change,
    secant_extrapolate,
    solve,
)
from signomial_mm.signomial import Signomial


def test_config_validation():
    for bad in (dict(epsilon=0), dict(max_iterations=0), dict(acceleration_q=4), dict(damping_factor=1)):
        with pytest.raises(ValueError):
            SolverConfig(**bad)


def test_relative_change():
    assert relative_change(3.0, 1.0) == pytest.approx(0.5)


def test_f1_converges_to_table_point():
    tr = solve(f1, (1.0, 2.0), TABLE1_CONFIG)
    assert tr.outcome == CONVERGED
    assert np.allclose(tr.x, (1.4310, 1.4310), atol=1e-3)


def test_monotone_descent_on_every_benchmark():
    for name in UNCONSTRAINED:
        f = objective(name)
        tr = solve(f, np.ones(f.dimension), SolverConfig(max_iterations=300))
        obj = tr.objectives
        assert np.all(np.diff(obj) <= 1e-12 * (1 + np.abs(obj[:-1]))), name


def test_f3_diverges_with_decreasing_values():
    tr = solve(UNCONSTRAINED["f3"], (1.0, 1.0))
    assert tr.outcome == DIVERGED
    assert tr.value < tr.f0


def test_budget_exhausted():
    tr = solve(f1, (1.0, 2.0), SolverConfig(max_iterations=3))
    assert tr.iterations == 3
    assert tr.outcome == "iteration-budget-exhausted"


def test_acceleration_speeds_up_f6():
    f6 = UNCONSTRAINED["f6"]
    plain = solve(f6, (1.0, 1.0), TABLE1_CONFIG)
    fast = solve(f6, (1.0, 1.0), SolverConfig(inner=TABLE1_CONFIG.inner, acceleration_q=2))
    assert fast.iterations * 10 < plain.iterations
    assert any(r.step_kind == ACCELERATED for r in fast.records)
    assert fast.value <= plain.value + 1e-6


def test_secant_extrapolation_solves_linear_map():
    # a linear contraction is solved exactly once the window spans the space
    A = np.array([[0.5, 0.1], [0.0, 0.8]])
    c = np.array([1.0, 2.0])
    M = lambda x: A @ x + c
    x = np.array([0.3, 0.4])
    x1 = M(x)
    U = np.column_stack([x1 - x, M(x1) - x1])
    x2 = M(x1)
    V = np.column_stack([x2 - x1, M(x2) - x2])
    fixed = np.linalg.solve(np.eye(2) - A, c)
    assert np.allclose(secant_extrapolate(x, x1, U, V), fixed)


def test_iterate_map_with_custom_step():
    step = lambda x: (0.5 * x + 0.5, "mm", np.zeros(x.size, dtype=int))
    value = lambda x: float(np.sum((x - 1.0) ** 2))
    tr = iterate_map(step, value, [3.0], SolverConfig(epsilon=1e-14))
    assert tr.x[0] == pytest.approx(1.0, abs=1e-6)


def test_positive_start_required():
    with pytest.raises(ValueError):
        solve(f1, (0.0, 1.0))
