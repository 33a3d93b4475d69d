import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from signomial_mm.benchmarks import TABLE1_CONFIG, UNCONSTRAINED, f1
from signomial_mm.diagnostics import (
    NO,
    UNKNOWN,
    YES,
    auxiliary_min_t,
    check_bounded_below,
    check_coercive,
    check_strict_convexity,
    diagnose,
    exponent_rank,
    mm_convergence_checklist,
)
from signomial_mm.driver import solve

exponent_sets = st.integers(1, 4).flatmap(
    lambda n: st.lists(
        st.lists(st.integers(-3, 3).map(float), min_size=n, max_size=n), min_size=1, max_size=6
    )
).map(np.array)


def test_f1_is_well_behaved():
    report = diagnose(f1)
    assert report.strictly_convex is True
    assert report.coercive.status == YES
    assert report.bounded_below.status == YES
    assert report.coercive.t_min > 0


def test_f2_rank_deficient():
    conv = check_strict_convexity(UNCONSTRAINED["f2"])
    assert conv.rank == 1 and conv.strictly_convex is False
    assert check_coercive(UNCONSTRAINED["f2"]).status == NO


def test_f3_certificates():
    f3 = UNCONSTRAINED["f3"]
    c = check_coercive(f3)
    b = check_bounded_below(f3)
    assert c.status == NO and b.status == NO
    assert np.max(f3.exponents @ b.certificate) < 0
    assert np.allclose(np.abs(b.certificate), (0.832, 0.555), atol=1e-3)


def test_signomials_are_unknown():
    assert check_coercive(UNCONSTRAINED["f4"]).status == UNKNOWN
    assert check_strict_convexity(UNCONSTRAINED["f4"]).strictly_convex is None


def test_rank_tolerance():
    assert exponent_rank(np.array([[1.0, 2.0], [2.0, 4.0 + 1e-14]])) == 1


@settings(max_examples=60, deadline=None)
@given(exponent_sets)
def test_verdicts_are_sound(S):
    c = check_coercive(S, starts=5)
    b = check_bounded_below(S, starts=5)
    if c.status == NO:
        assert np.max(S @ c.certificate) <= 1e-9
    if b.status == NO:
        assert np.max(S @ b.certificate) < -1e-9
    if c.status == YES:
        t, _, _ = auxiliary_min_t(S, starts=5)
        assert t > -1e-9
    # coercive posynomials attain their minimum
    if c.status == YES:
        assert b.status == YES


def test_auxiliary_program_one_dimensional():
    t, y, ok = auxiliary_min_t(np.array([[1.0], [2.0]]))
    assert ok and t == -1.0 and y[0] == -1.0


def test_checklist_on_f1_and_f3():
    tr = solve(f1, (1.0, 2.0), TABLE1_CONFIG)
    report = mm_convergence_checklist(f1, tr)
    assert report.stationary and report.descent
    assert report.continuity == "assumed"
    tr3 = solve(UNCONSTRAINED["f3"], (1.0, 1.0))
    report3 = mm_convergence_checklist(UNCONSTRAINED["f3"], tr3)
    assert report3.stationary is None
    assert any("not coercive" in n for n in report3.notes)
