"""Majorization-minimization for signomial programs and nonnegative QPs."""

from .diagnostics import check_bounded_below, check_coercive, check_strict_convexity, diagnose
from .driver import IterationTrace, SolverConfig, solve
from .nnqp import QpProblem, solve_qp
from .penalty import PenaltyProblem, PenaltySchedule, solve_constrained
from .problemfile import ProblemSpec, load, loads
from .signomial import CompositeObjective, Signomial
from .surrogate import InnerSolveOptions, majorize

__all__ = [
    "Signomial",
    "CompositeObjective",
    "majorize",
    "InnerSolveOptions",
    "SolverConfig",
    "IterationTrace",
    "solve",
    "PenaltyProblem",
    "PenaltySchedule",
    "solve_constrained",
    "QpProblem",
    "solve_qp",
    "diagnose",
    "check_coercive",
    "check_bounded_below",
    "check_strict_convexity",
    "ProblemSpec",
    "load",
    "loads",
]
