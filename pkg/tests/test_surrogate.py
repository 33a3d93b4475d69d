import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from signomial_mm.benchmarks import UNCONSTRAINED, objective
from signomial_mm.signomial import Signomial
from signomial_mm.surrogate import (
    InnerSolveOptions,
    NotCoerciveCoordinate,
    SurrogateCoordinate,
    majorize,
    minimize_coordinate,
)

from conftest import positive_points, signomials


@settings(max_examples=60)
@given(signomials(dimension=2), positive_points(2), positive_points(2))
def test_majorizer_dominates_and_touches(s, x, x_m):
    rep = majorize(s, x_m)
    fx = s(x)
    assert rep.value(x) >= fx - 1e-9 * (1 + abs(fx))
    assert rep.value(x_m) == pytest.approx(s(x_m), rel=1e-10, abs=1e-10)


@settings(max_examples=40)
@given(signomials(dimension=3), positive_points(3))
def test_majorizer_is_tangent(s, x_m):
    rep = majorize(s, x_m)
    g = s.gradient(x_m) if hasattr(s, "gradient") else None
    from signomial_mm.signomial import gradient

    g = gradient(s, x_m)
    assert np.allclose(rep.derivatives(x_m), g, rtol=1e-6, atol=1e-8 * (1 + np.abs(g).max()))


def test_f5_composite_majorizer(rng):
    f = objective("f5")
    for _ in range(20):
        x, x_m = rng.uniform(0.1, 10, 3), rng.uniform(0.1, 10, 3)
        assert majorize(f, x_m).value(x) >= f.value(x) - 1e-9 * (1 + abs(f.value(x)))


def test_power_is_l1_norm_with_sign():
    s = Signomial.from_terms([(1.0, (2, -1))])
    rep = majorize(s, [1.0, 1.0])
    assert rep.coordinates[0].powers == (3.0,)
    assert rep.coordinates[1].powers == (-3.0,)
    assert sum(c.scaled_weights[0] for c in rep.coordinates) == pytest.approx(1.0)


@given(
    st.floats(0.1, 10), st.floats(0.1, 10), st.floats(0.5, 4), st.floats(0.5, 4), st.floats(0.1, 5)
)
def test_coordinate_minimizer_closed_form(a, b, p, q, anchor):
    # a t^p + b t^-q is minimized where a p t^p = b q t^-q
    g = SurrogateCoordinate(0, 1.0, (p, -q), (a, b))
    x = minimize_coordinate(g, x_mi=anchor)
    expected = (b * q / (a * p)) ** (1.0 / (p + q))
    assert x == pytest.approx(expected, rel=1e-9)


def test_log_term_only_side():
    # 2x - 3 ln x has its minimum at 1.5
    g = SurrogateCoordinate(0, 1.0, (1.0,), (2.0,), log_weight=-3.0)
    assert minimize_coordinate(g) == pytest.approx(1.5, rel=1e-12)


def test_not_coercive_direction():
    with pytest.raises(NotCoerciveCoordinate) as info:
        minimize_coordinate(SurrogateCoordinate(0, 1.0, (1.0,), (1.0,)))
    assert info.value.direction == -1
    with pytest.raises(NotCoerciveCoordinate) as info:
        minimize_coordinate(SurrogateCoordinate(0, 1.0, (-2.0,), (1.0,)))
    assert info.value.direction == 1


def test_truncated_inner_budget_stays_finite():
    g = SurrogateCoordinate(0, 1.0, (4.0, -1.0), (1e-3, 50.0))
    x = minimize_coordinate(g, opts=InnerSolveOptions(max_inner_iterations=1))
    assert math.isfinite(x) and x > 0


def test_options_validated():
    with pytest.raises(ValueError):
        InnerSolveOptions(inner_tolerance=0)
