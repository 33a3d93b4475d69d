"""Run a parsed problem with resolved options; write traces and summaries."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, replace

import numpy as np

from .driver import IterationTrace, SolverConfig, solve
from .nnqp import solve_qp
from .penalty import PenaltyResult, PenaltySchedule, solve_constrained
from .problemfile import ProblemSpec, RunOptions
from .surrogate import InnerSolveOptions

__all__ = [
    "RunResult",
    "resolve_options",
    "run_problem",
    "write_trace",
    "trace_text",
    "format_point",
    "summary_line",
    "stage_lines",
]

DEFAULT_SCHEDULE = (0, 17)
DEFAULT_STAGE_ITERATIONS = 500


@dataclass
class RunResult:
    spec: ProblemSpec
    options: RunOptions
    trace: IterationTrace | None = None
    path: PenaltyResult | None = None

    @property
    def x(self) -> np.ndarray:
        return self.trace.x if self.trace is not None else self.path.x

    @property
    def iterations(self) -> int:
        if self.trace is not None:
            return self.trace.iterations
        return sum(s.iterations for s in self.path.stages)

    @property
    def outcome(self) -> str:
        if self.trace is not None:
            return self.trace.outcome
        return self.path.stages[-1].trace.outcome

    @property
    def diverged(self) -> bool:
        return self.outcome == "diverged"

    @property
    def value(self) -> float:
        """Objective at the final point (unpenalized for constrained runs)."""
        if self.spec.qp is not None:
            return self.spec.qp.objective(self.x)
        return self.spec.objective.value(self.x)


def resolve_options(spec: ProblemSpec, **overrides) -> RunOptions:
    """File options with command-line overrides (``None`` leaves them alone)."""
    given = {k: v for k, v in overrides.items() if v is not None}
    return replace(spec.options, **given)


def _inner(opts: RunOptions) -> InnerSolveOptions:
    kwargs = {}
    if opts.inner_iterations is not None:
        kwargs["max_inner_iterations"] = opts.inner_iterations
    return InnerSolveOptions(**kwargs)


def run_problem(spec: ProblemSpec, options: RunOptions | None = None) -> RunResult:
    """Dispatch to the MM driver, the penalty solver or the QP solver.

    ``inner_eps`` is the inner-loop tolerance: the coordinate solver's
    tolerance for unconstrained problems and the per-stage relative-change
    threshold for penalty paths (falling back to ``epsilon``).
    """
    opts = options or spec.options
    if spec.kind == "unconstrained":
        inner = _inner(opts)
        if opts.inner_eps is not None:
            inner = replace(inner, inner_tolerance=opts.inner_eps)
        cfg = SolverConfig(
            epsilon=opts.epsilon if opts.epsilon is not None else 1e-9,
            max_iterations=opts.max_iterations or 100_000,
            acceleration_q=opts.accel or 0,
            inner=inner,
        )
        return RunResult(spec, opts, trace=solve(spec.objective, spec.initial, cfg))

    stage_eps = opts.inner_eps if opts.inner_eps is not None else opts.epsilon
    stage_cfg = SolverConfig(
        epsilon=stage_eps if stage_eps is not None else 1e-9,
        max_iterations=opts.stage_iterations or opts.max_iterations or DEFAULT_STAGE_ITERATIONS,
        acceleration_q=opts.accel or 0,
        inner=_inner(opts),
    )
    k0, k1 = opts.schedule or DEFAULT_SCHEDULE
    schedule = PenaltySchedule.powers_of_two(k0, k1, inner_config=stage_cfg, stop_tolerance=None)
    if spec.kind == "qp":
        eps_floor = opts.eps_floor if opts.eps_floor is not None else 1e-9
        path = solve_qp(spec.qp, spec.initial, schedule, eps_floor=eps_floor)
    else:
        path = solve_constrained(spec.penalty_problem(), spec.initial, schedule)
    return RunResult(spec, opts, path=path)


def _full(v: float) -> str:
    return format(float(v), ".17g")


def write_trace(result: RunResult, stream) -> int:
    """Write the iteration trace as CSV; returns the number of data rows.

    One row per recorded iteration, then a single ``# summary`` row.
    """
    n = result.spec.dimension
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["iteration", "lambda", "objective", "penalized"] + [f"x{i + 1}" for i in range(n)] + ["step_kind"])
    rows = 0
    if result.trace is not None:
        for k, rec in enumerate(result.trace.records, start=1):
            writer.writerow([k, "", _full(rec.objective), ""] + [_full(v) for v in rec.iterate] + [rec.step_kind])
            rows += 1
    else:
        spec = result.spec
        for stage in result.path.stages:
            for k, rec in enumerate(stage.trace.records, start=1):
                if spec.qp is not None:
                    base = spec.qp.objective(rec.iterate)
                else:
                    base = spec.objective.value(rec.iterate)
                writer.writerow(
                    [k, _full(stage.lam), _full(base), _full(rec.objective)]
                    + [_full(v) for v in rec.iterate]
                    + [rec.step_kind]
                )
                rows += 1
    writer.writerow(
        ["# summary", f"outcome={result.outcome}", f"iterations={result.iterations}", f"value={_full(result.value)}"]
        + ["point=" + ";".join(_full(v) for v in result.x)]
    )
    return rows


def trace_text(result: RunResult) -> str:
    buf = io.StringIO()
    write_trace(result, buf)
    return buf.getvalue()


def format_point(x) -> str:
    # coordinates on the boundary print as zero, as in the reference tables
    return "(" + ",".join("0.0000" if abs(v) < 1e-4 else f"{v:.4f}" for v in x) + ")"


def _value(v: float) -> str:
    return "0.0000" if abs(v) < 1e-4 else f"{v:.4f}"


def summary_line(result: RunResult) -> str:
    spec = result.spec
    point = "diverges" if result.diverged else format_point(result.x)
    return (
        f"{spec.name}  initial {format_point(spec.initial)}  min point {point}  "
        f"value {_value(result.value)}  iterations {result.iterations}  outcome {result.outcome}"
    )


def stage_lines(result: RunResult) -> list[str]:
    """``log2(lambda)  iterations  x_lambda`` for each penalty stage."""
    out = []
    for stage in result.path.stages:
        k = int(round(np.log2(stage.lam)))
        tag = " (skipped)" if stage.skipped else ""
        out.append(f"{k:>4}  {stage.iterations:>6}  {format_point(stage.x)}{tag}")
    return out

