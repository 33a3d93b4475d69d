import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from signomial_mm.problemfile import (
    ProblemFileError,
    ProblemSpec,
    RunOptions,
    bundled_names,
    dumps,
    load_bundled,
    loads,
)
from signomial_mm.signomial import CompositeObjective

from conftest import signomials

MINIMAL = """\
[problem]
name = demo   # trailing comment
dimension = 2
initial = 1 2

[objective]
1 : -3 0
3 : -1 -2
1 : 1 1
"""


def test_minimal_file():
    spec = loads(MINIMAL)
    assert spec.kind == "unconstrained"
    assert spec.name == "demo"
    assert np.allclose(spec.initial, (1.0, 2.0))
    assert spec.objective.value((1.0, 1.0)) == pytest.approx(5.0)


@pytest.mark.parametrize("name", bundled_names())
def test_bundled_round_trip(name):
    spec = load_bundled(name)
    assert loads(dumps(spec)) == spec


@settings(max_examples=50)
@given(signomials(dimension=3), st.lists(st.floats(0.01, 100), min_size=3, max_size=3))
def test_round_trip_property(f, x0):
    spec = ProblemSpec("prop", 3, np.array(x0), objective=CompositeObjective(f), options=RunOptions(epsilon=1e-7))
    again = loads(dumps(spec))
    assert again == spec
    assert again.objective.plain == f


@pytest.mark.parametrize(
    "text, line",
    [
        ("[problem\n", 1),
        ("name = x\n", 1),
        ("[problem]\nname = x\ndimension = two\n", 3),
        ("[problem]\nname = x\ndimension = 2\ninitial = 1 -1\n[objective]\n1 : 1 1\n", 4),
        ("[problem]\nname = x\ndimension = 2\ninitial = 1 1\n[objective]\n1 : 1\n", 6),
        ("[problem]\nname = x\ndimension = 2\ninitial = 1 1\n[objective]\nabc : 1 1\n", 6),
        ("[problem]\nname = x\ndimension = 2\ninitial = 1 1\n[mystery]\n", 5),
        ("[problem]\nname = x\ndimension = 2\ninitial = 1 1\n", 1),
        ("[problem]\nname = x\ndimension = 2\ninitial = 1 1\n[objective]\n1 : 1 1\n[options]\nepsilon = big\n", 8),
    ],
)
def test_errors_report_line(text, line):
    with pytest.raises(ProblemFileError) as info:
        loads(text)
    assert info.value.line == line
    assert f"line {line}" in str(info.value)


def test_constrained_kinds():
    spec = load_bundled("toy_constrained")
    assert spec.kind == "constrained"
    problem = spec.penalty_problem()
    assert problem.infeasibility((1.43204, 2.17868)) < 1e-6
    assert load_bundled("f10").kind == "qp"


def test_posynomial_constraint_rejects_negative_coefficient():
    text = MINIMAL + "[inequality posynomial]\n-1 : 1 0\n"
    with pytest.raises(ProblemFileError):
        loads(text)
