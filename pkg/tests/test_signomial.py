import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from signomial_mm.benchmarks import UNCONSTRAINED, f1, f5
from signomial_mm.oracles import finite_difference_gradient
from signomial_mm.signomial import (
    CompositeObjective,
    Signomial,
    as_positive_point,
    clear_negative_exponents,
    constant,
    evaluate,
    gradient,
    monomial,
    normalize_constraint,
    square,
)

from conftest import positive_points, signomials


def test_like_terms_merge_and_zeros_drop():
    s = Signomial.from_terms([(1.0, (1, 0)), (2.0, (1, 0)), (3.0, (0, 1)), (-3.0, (0, 1))])
    assert len(s) == 1
    assert s.terms[0].coefficient == 3.0


def test_dimension_mismatch_rejected():
    with pytest.raises(ValueError):
        Signomial.from_terms([(1.0, (1, 0)), (1.0, (1,))])


def test_positive_point_validation():
    with pytest.raises(ValueError):
        as_positive_point([1.0, 0.0])
    with pytest.raises(ValueError):
        as_positive_point([1.0, 2.0], dimension=3)


def test_f1_value_at_minimizer():
    assert evaluate(f1, [1.4310, 1.4310]) == pytest.approx(3.4128, abs=1e-4)


@given(signomials(dimension=2), signomials(dimension=2), positive_points(2))
def test_algebra_matches_pointwise(a, b, x):
    assert evaluate(a + b, x) == pytest.approx(evaluate(a, x) + evaluate(b, x), rel=1e-9, abs=1e-9)
    assert evaluate(a - b, x) == pytest.approx(evaluate(a, x) - evaluate(b, x), rel=1e-9, abs=1e-9)
    assert evaluate(a * b, x) == pytest.approx(evaluate(a, x) * evaluate(b, x), rel=1e-9, abs=1e-9)


@given(signomials(dimension=2), positive_points(2))
def test_square(a, x):
    assert evaluate(square(a), x) == pytest.approx(evaluate(a, x) ** 2, rel=1e-9, abs=1e-9)


@given(signomials(dimension=2), positive_points(2))
def test_clearing_negative_exponents_preserves_sign(a, x):
    b = clear_negative_exponents(a)
    assert b.exponents.min() >= 0
    assert np.sign(evaluate(b, x)) == np.sign(evaluate(a, x)) or abs(evaluate(a, x)) < 1e-12


@given(signomials(dimension=2, positive=True), positive_points(2))
def test_normalized_constraint(h, x):
    r = normalize_constraint(h)
    assert r.exponents.min() >= 0
    hx = evaluate(h, x)
    assert np.sign(evaluate(r, x)) == np.sign(hx - 1.0) or abs(hx - 1.0) < 1e-12


@settings(max_examples=50)
@given(signomials(dimension=3), positive_points(3))
def test_gradient_matches_finite_differences(s, x):
    g = gradient(s, x)
    fd = finite_difference_gradient(lambda y: evaluate(s, y), x, h=1e-6)
    assert np.allclose(g, fd, rtol=1e-5, atol=1e-5 * (1 + np.abs(g).max()))


def test_composite_value_and_mode():
    x = np.array([0.5, 1.0, 2.0])
    expected = 0.5 + 1.0 + 2.0 - math.log(3.5)
    assert f5.value(x) == pytest.approx(expected)
    assert CompositeObjective.of(f1).mode == "plain"
    assert f5.mode != "plain"


@pytest.mark.parametrize("name", sorted(UNCONSTRAINED))
def test_reduction_is_tight_at_anchor(name):
    f = CompositeObjective.of(UNCONSTRAINED[name])
    x = np.full(f.dimension, 1.3)
    red = f.reduce_at(x)
    bound = evaluate(red.signomial, x) + red.log_weights @ np.log(x) + red.constant
    assert bound == pytest.approx(f.value(x), rel=1e-12)


def test_monomial_and_constant():
    m = monomial(2.0, (1, -1))
    assert evaluate(m + constant(1.0, 2), [3.0, 2.0]) == pytest.approx(4.0)


def test_str_roundtrips_visibly():
    assert "x1" in str(monomial(2.0, (1, 0)))
