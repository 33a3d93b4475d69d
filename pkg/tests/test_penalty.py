import numpy as np
import pytest
from hypothesis import given, settings

from signomial_mm.benchmarks import QP_PROBLEMS
from signomial_mm.driver import SolverConfig
from signomial_mm.penalty import (
    PenalizedObjective,
    PenaltyProblem,
    PenaltySchedule,
    linear_as_signomial,
    majorize_hinge_square,
    quadratic_as_signomial,
    solve_constrained,
)
from signomial_mm.problemfile import load_bundled
from signomial_mm.signomial import Signomial, evaluate
from signomial_mm.surrogate import majorize

from conftest import positive_points, signomials


def test_schedule_validation():
    with pytest.raises(ValueError):
        PenaltySchedule(lambdas=(2.0, 1.0))
    with pytest.raises(ValueError):
        PenaltySchedule(lambdas=(0.0, 1.0))
    assert PenaltySchedule.powers_of_two(0, 3).lambdas == (1.0, 2.0, 4.0, 8.0)


@given(signomials(dimension=2), positive_points(2), positive_points(2))
def test_hinge_square_majorizer(s, x, x_m):
    bound = majorize_hinge_square(s, x_m)
    # the expanded square cancels terms of size s(x_m)^2 and s(x)^2
    scale = 1.0 + evaluate(s, x_m) ** 2 + evaluate(s, x) ** 2
    hinge = max(evaluate(s, x), 0.0) ** 2
    assert evaluate(bound, x) >= hinge - 1e-12 * scale
    at_anchor = max(evaluate(s, x_m), 0.0) ** 2
    assert evaluate(bound, x_m) == pytest.approx(at_anchor, abs=1e-12 * scale)


def test_quadratic_and_linear_helpers(rng):
    p = QP_PROBLEMS["f10"]
    q = quadratic_as_signomial(p.Q, p.c)
    row = linear_as_signomial(p.A[1], p.b[1])
    for _ in range(10):
        x = rng.uniform(0.1, 3, 2)
        assert evaluate(q, x) == pytest.approx(p.objective(x))
        assert evaluate(row, x) == pytest.approx(p.A[1] @ x - p.b[1])


@settings(max_examples=30)
@given(positive_points(2), positive_points(2))
def test_penalized_majorizer_dominates(x, x_m):
    problem = load_bundled("toy_constrained").penalty_problem()
    pen = PenalizedObjective(problem, 8.0)
    rep = majorize(pen, x_m)
    assert rep.value(x) >= pen.value(x) - 1e-9 * (1 + abs(pen.value(x)))
    assert rep.value(x_m) == pytest.approx(pen.value(x_m), rel=1e-10)


def test_toy_constrained_reaches_kkt_point():
    problem = load_bundled("toy_constrained").penalty_problem()
    cfg = SolverConfig(epsilon=1e-12, max_iterations=2000, acceleration_q=1)
    result = solve_constrained(problem, (2.0, 3.0), PenaltySchedule.powers_of_two(0, 24, inner_config=cfg, stop_tolerance=None))
    assert np.allclose(result.x, (1.43204, 2.17868), atol=2e-3)
    assert problem.infeasibility(result.x) < 1e-6
    assert result.lambdas[-1] == 2.0**24


def test_early_stop():
    problem = load_bundled("toy_constrained").penalty_problem()
    sched = PenaltySchedule.powers_of_two(0, 30, inner_config=SolverConfig(max_iterations=2000), stop_tolerance=1e-3)
    result = solve_constrained(problem, (2.0, 3.0), sched)
    assert result.stopped_early
    assert len(result.stages) < 31


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        PenaltyProblem(Signomial.from_terms([(1.0, (1, 1))]), equalities=(Signomial.from_terms([(1.0, (1,))]),))
