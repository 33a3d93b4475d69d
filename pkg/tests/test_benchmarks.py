import numpy as np
import pytest

from signomial_mm.benchmarks import TABLE1, TABLE2, TABLE3, UNCONSTRAINED, objective
from signomial_mm.problemfile import load_bundled


def test_table_shapes():
    assert len(TABLE1) == 10
    assert sorted(TABLE2) == list(range(18))
    assert sorted(TABLE3) == list(range(22))


@pytest.mark.parametrize("name", sorted(UNCONSTRAINED))
def test_bundled_files_match_definitions(name, rng):
    spec = load_bundled(name)
    f = objective(name)
    for _ in range(5):
        x = rng.uniform(0.3, 3, f.dimension)
        assert spec.objective.value(x) == pytest.approx(f.value(x), rel=1e-12)


def test_f4_zero_at_product_balance():
    assert objective("f4").value((2.0, 3.0, 1.0, 6.0)) == pytest.approx(0.0, abs=1e-12)
