"""Write the bundled problem files from the benchmark definitions.

    python scripts/generate_problem_files.py [output-dir]
"""

import sys
from pathlib import Path

from signomial_mm.benchmarks import QP_PROBLEMS, QP_X0, TABLE1, UNCONSTRAINED, objective
from signomial_mm.problemfile import Constraint, ProblemSpec, RunOptions, dumps, loads
from signomial_mm.signomial import CompositeObjective, Signomial

TABLE1_OPTIONS = RunOptions(epsilon=1e-9, inner_iterations=5)
QP_OPTIONS = {
    "f10": RunOptions(schedule=(0, 17), inner_eps=1e-9, stage_iterations=100_000),
    "f11": RunOptions(schedule=(0, 21), inner_eps=1e-16, stage_iterations=100_000),
}


def specs():
    seen = set()
    for row in TABLE1:
        name = row.name if row.name not in seen else f"{row.name}_alt"
        seen.add(row.name)
        yield ProblemSpec(name, len(row.x0), row.x0, objective(row.name), options=TABLE1_OPTIONS)
    for name, qp in QP_PROBLEMS.items():
        yield ProblemSpec(name, qp.dimension, QP_X0, qp=qp, options=QP_OPTIONS[name])
    # x1 + x2 subject to 1/x1 + x1/x2^2 = 1
    yield ProblemSpec(
        "toy_constrained",
        2,
        (2.0, 3.0),
        CompositeObjective(Signomial.from_terms([(1.0, (1, 0)), (1.0, (0, 1))])),
        constraints=(Constraint("equality", "posynomial", Signomial.from_terms([(1.0, (-1, 0)), (1.0, (1, -2))])),),
        options=RunOptions(accel=1, schedule=(0, 24), inner_eps=1e-12, stage_iterations=2000),
    )


def main(out: Path) -> None:
    out.mkdir(parents=True, exist_ok=True)
    for spec in specs():
        text = dumps(spec)
        assert loads(text) == spec
        (out / f"{spec.name}.prob").write_text(text)
        print(f"wrote {out / spec.name}.prob")
    assert set(UNCONSTRAINED) <= {s.name for s in specs()}


if __name__ == "__main__":
    default = Path(__file__).resolve().parents[1] / "src" / "signomial_mm" / "problems"
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else default)
