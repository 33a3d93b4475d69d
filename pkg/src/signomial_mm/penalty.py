"""Quadratic penalty method for signomial equality and inequality constraints."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .driver import IterationTrace, SolverConfig, iterate_map, mm_step
from .signomial import (
    CompositeObjective,
    Reduction,
    Signomial,
    as_positive_point,
    clear_negative_exponents,
    evaluate,
    square,
)

__all__ = [
    "PenaltySchedule",
    "PenaltyProblem",
    "PenalizedObjective",
    "PenaltyStage",
    "PenaltyResult",
    "penalized_objective",
    "majorize_hinge_square",
    "solve_constrained",
]


def _default_lambdas() -> tuple[float, ...]:
    return tuple(2.0**k for k in range(18))


@dataclass(frozen=True)
class PenaltySchedule:
    """Increasing penalty constants with the per-stage solver settings.

    ``stop_tolerance``: stop once consecutive stage solutions differ by at
    most this much in the max norm (``None`` runs the whole schedule).
    """

    lambdas: tuple[float, ...] = field(default_factory=_default_lambdas)
    inner_config: SolverConfig = field(default_factory=lambda: SolverConfig(max_iterations=500))
    warm_start: bool = True
    stop_tolerance: float | None = 1e-6

    def __post_init__(self):
        lams = tuple(float(v) for v in self.lambdas)
        if not lams or lams[0] <= 0 or any(b <= a for a, b in zip(lams, lams[1:])):
            raise ValueError("penalty constants must be positive and strictly increasing")
        object.__setattr__(self, "lambdas", lams)

    @classmethod
    def powers_of_two(cls, k0: int, k1: int, **kwargs) -> "PenaltySchedule":
        return cls(tuple(2.0**k for k in range(k0, k1 + 1)), **kwargs)


@dataclass(frozen=True)
class PenaltyProblem:
    """Minimize ``objective`` subject to ``r_i(x) = 0`` and ``s_j(x) <= 0``.

    Equality signomials are multiplied through by the monomial that clears
    their negative exponents, which leaves the zero set unchanged.
    """

    objective: CompositeObjective
    equalities: tuple[Signomial, ...] = ()
    inequalities: tuple[Signomial, ...] = ()
    schedule: PenaltySchedule = field(default_factory=PenaltySchedule)

    def __post_init__(self):
        obj = CompositeObjective.of(self.objective)
        object.__setattr__(self, "objective", obj)
        eqs = tuple(clear_negative_exponents(r) for r in self.equalities)
        object.__setattr__(self, "equalities", eqs)
        object.__setattr__(self, "inequalities", tuple(self.inequalities))
        for g in eqs + self.inequalities:
            if g.dimension != obj.dimension:
                raise ValueError("constraint dimension does not match the objective")

    @property
    def dimension(self) -> int:
        return self.objective.dimension

    def infeasibility(self, x) -> float:
        """``sum r_i(x)^2 + sum max(s_j(x), 0)^2``."""
        total = sum(evaluate(r, x) ** 2 for r in self.equalities)
        total += sum(max(evaluate(s, x), 0.0) ** 2 for s in self.inequalities)
        return float(total)


def majorize_hinge_square(s: Signomial, x_m) -> Signomial:
    """Signomial majorizer of ``max(s(x), 0)**2`` tangent at ``x_m``.

    ``(s(x) - s(x_m))**2`` when ``s(x_m) < 0``, else ``s(x)**2``.
    """
    s_m = evaluate(s, np.asarray(x_m, dtype=float))
    if s_m < 0.0:
        return square(s - s_m)
    return square(s)


class PenalizedObjective:
    """``f(x) + lam * sum r_i(x)^2 + lam * sum max(s_j(x), 0)^2``."""

    def __init__(self, problem: PenaltyProblem, lam: float):
        if lam <= 0:
            raise ValueError("penalty constant must be positive")
        self.problem = problem
        self.lam = float(lam)
        penalty = Signomial.zero(problem.dimension)
        for r in problem.equalities:
            penalty = penalty + square(r)
        self._equality_penalty = penalty * self.lam

    @property
    def dimension(self) -> int:
        return self.problem.dimension

    def value(self, x) -> float:
        return self.problem.objective.value(x) + self.lam * self.problem.infeasibility(x)

    __call__ = value

    def reduce_at(self, x_m) -> Reduction:
        base = self.problem.objective.reduce_at(x_m)
        sig = base.signomial + self._equality_penalty
        for s in self.problem.inequalities:
            sig = sig + majorize_hinge_square(s, x_m) * self.lam
        return Reduction(sig, base.log_weights, base.constant)


def penalized_objective(problem: PenaltyProblem, lam: float) -> PenalizedObjective:
    return PenalizedObjective(problem, lam)


@dataclass
class PenaltyStage:
    lam: float
    trace: IterationTrace
    x: np.ndarray
    infeasibility: float
    skipped: bool = False

    @property
    def iterations(self) -> int:
        return self.trace.iterations


@dataclass
class PenaltyResult:
    stages: list[PenaltyStage]
    stopped_early: bool = False

    @property
    def x(self) -> np.ndarray:
        return self.stages[-1].x

    @property
    def lambdas(self) -> list[float]:
        return [s.lam for s in self.stages]


def solve_constrained(problem: PenaltyProblem, x0, schedule: PenaltySchedule | None = None) -> PenaltyResult:
    """Run the MM driver on each penalized objective along the schedule."""
    schedule = schedule or problem.schedule
    cfg = schedule.inner_config
    x0 = as_positive_point(x0, problem.dimension)
    x = x0
    stages: list[PenaltyStage] = []
    for lam in schedule.lambdas:
        f_lam = penalized_objective(problem, lam)
        start = x if schedule.warm_start else x0
        trace = iterate_map(lambda z: mm_step(f_lam, z, cfg), f_lam.value, start, cfg)
        x_lam = trace.x
        stages.append(PenaltyStage(lam, trace, x_lam, problem.infeasibility(x_lam)))
        if trace.diverged:
            break
        previous, x = x, x_lam
        if (
            schedule.stop_tolerance is not None
            and len(stages) > 1
            and np.max(np.abs(x_lam - previous)) <= schedule.stop_tolerance
        ):
            return PenaltyResult(stages, stopped_early=lam != schedule.lambdas[-1])
    return PenaltyResult(stages)


def quadratic_as_signomial(Q: np.ndarray, c: Sequence[float]) -> Signomial:
    """``0.5 x'Qx + c'x`` written as a signomial."""
    Q = np.asarray(Q, dtype=float)
    n = Q.shape[0]
    terms = []
    for i in range(n):
        for j in range(n):
            e = [0] * n
            e[i] += 1
            e[j] += 1
            terms.append((0.5 * Q[i, j], e))
        e = [0] * n
        e[i] = 1
        terms.append((float(c[i]), e))
    return Signomial.from_terms(terms, n)


def linear_as_signomial(row: Sequence[float], rhs: float) -> Signomial:
    """``row . x - rhs`` as a signomial."""
    n = len(row)
    terms = [(float(a), [1 if k == i else 0 for k in range(n)]) for i, a in enumerate(row)]
    terms.append((-float(rhs), [0] * n))
    return Signomial.from_terms(terms, n)
