import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import minimize

from signomial_mm.benchmarks import QP_PROBLEMS, QP_X0
from signomial_mm.driver import SolverConfig
from signomial_mm.nnqp import (
    SKIPPED,
    QpProblem,
    QpUpdateError,
    penalized_state,
    qp_penalized_value,
    qp_update,
    solve_qp,
)
from signomial_mm.penalty import PenaltySchedule


def test_problem_is_frozen_and_symmetrized():
    p = QpProblem(Q=[[2.0, 1.0], [0.0, 2.0]], c=[0.0, 0.0])
    assert np.allclose(p.Q, p.Q.T)
    with pytest.raises(ValueError):
        p.Q[0, 0] = 1.0
    assert p.A.shape == (0, 2)


@settings(max_examples=50)
@given(st.integers(0, 2**31 - 1), st.floats(0.5, 100))
def test_update_decreases_penalized_value(seed, lam):
    rng = np.random.default_rng(seed)
    B = rng.normal(size=(3, 3))
    p = QpProblem(Q=B @ B.T + 0.5 * np.eye(3), c=rng.normal(size=3), A=rng.uniform(-1, 1, (2, 3)), b=rng.uniform(0, 2, 2))
    x = rng.uniform(0.1, 3, 3)
    y = qp_update(x, penalized_state(p, lam, x))
    assert np.all(y > 0)
    before, after = qp_penalized_value(p, lam, x), qp_penalized_value(p, lam, y)
    assert after <= before + 1e-10 * (1 + abs(before))


def test_fixed_point_is_stage_minimizer():
    p = QP_PROBLEMS["f10"]
    lam = 4.0
    cfg = SolverConfig(epsilon=1e-15, max_iterations=100_000)
    result = solve_qp(p, QP_X0, PenaltySchedule(lambdas=(lam,), inner_config=cfg, stop_tolerance=None), penalty_scale=1.0)
    ref = minimize(lambda z: qp_penalized_value(p, lam, z), QP_X0, bounds=[(0, None)] * 2, method="L-BFGS-B", options={"ftol": 1e-15, "gtol": 1e-12})
    assert np.allclose(result.x, ref.x, atol=1e-5)


def test_f10_path_ends_at_constrained_minimizer():
    cfg = SolverConfig(epsilon=1e-9, max_iterations=100_000)
    result = solve_qp(QP_PROBLEMS["f10"], QP_X0, PenaltySchedule.powers_of_two(0, 17, inner_config=cfg, stop_tolerance=None))
    assert np.allclose(result.x, (2 / 3, 4 / 3), atol=1e-3)
    assert len(result.stages) == 18


def test_floor_applies_without_negative_entries():
    p = QpProblem(Q=np.eye(2), c=[1.0, -1.0])
    x = np.array([1.0, 1.0])
    y = qp_update(x, penalized_state(p, 1.0, x), eps_floor=1e-6)
    assert y[0] == pytest.approx(1e-6)
    assert y[1] == pytest.approx(1.0)


def test_row_without_positive_entries_is_skipped():
    p = QpProblem(Q=[[0.0, -1.0], [-1.0, 2.0]], c=[0.0, 0.0])
    with pytest.raises(QpUpdateError):
        qp_update(np.ones(2), penalized_state(p, 1.0, np.ones(2)))
    result = solve_qp(p, (1.0, 1.0), PenaltySchedule(lambdas=(1.0,), stop_tolerance=None))
    assert result.stages[0].skipped
    assert result.stages[0].trace.outcome == SKIPPED
    assert result.stages[0].iterations == 0


def test_equality_rows():
    # minimize |x|^2 subject to x1 + x2 = 2
    p = QpProblem(Q=2 * np.eye(2), c=[0.0, 0.0], E=[[1.0, 1.0]], d=[2.0])
    cfg = SolverConfig(epsilon=1e-14, max_iterations=100_000)
    result = solve_qp(p, (0.5, 2.0), PenaltySchedule.powers_of_two(0, 20, inner_config=cfg, stop_tolerance=None))
    assert np.allclose(result.x, (1.0, 1.0), atol=1e-4)
