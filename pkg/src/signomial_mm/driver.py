"""Outer MM loop for unconstrained problems, with optional secant acceleration."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .signomial import CompositeObjective, Signomial, as_positive_point
from .surrogate import InnerSolveOptions, NotCoerciveCoordinate, majorize, minimize_coordinate

__all__ = [
    "SolverConfig",
    "StepRecord",
    "IterationTrace",
    "CONVERGED",
    "DIVERGED",
    "BUDGET_EXHAUSTED",
    "mm_step",
    "accelerate",
    "secant_extrapolate",
    "iterate_map",
    "solve",
    "relative_change",
]

CONVERGED = "converged"
DIVERGED = "diverged"
BUDGET_EXHAUSTED = "iteration-budget-exhausted"

MM = "mm"
ACCELERATED = "accelerated"
DAMPED = "damped-divergence"


@dataclass(frozen=True)
class SolverConfig:
    epsilon: float = 1e-9
    max_iterations: int = 100_000
    acceleration_q: int = 0
    divergence_value_floor: float = -1e12
    divergence_coordinate_bounds: tuple[float, float] = (1e-12, 1e12)
    inner: InnerSolveOptions = field(default_factory=InnerSolveOptions)
    # multiplicative step for coordinates whose surrogate has no minimizer
    damping_factor: float = 10.0

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        if self.acceleration_q not in (0, 1, 2, 3):
            raise ValueError("acceleration_q must be one of 0, 1, 2, 3")
        lo, hi = self.divergence_coordinate_bounds
        if not 0 < lo < hi:
            raise ValueError("divergence bounds must satisfy 0 < lower < upper")
        if self.damping_factor <= 1:
            raise ValueError("damping_factor must exceed 1")


class StepRecord(NamedTuple):
    iterate: np.ndarray
    objective: float
    step_kind: str


@dataclass
class IterationTrace:
    x0: np.ndarray
    f0: float
    records: list[StepRecord] = field(default_factory=list)
    outcome: str = BUDGET_EXHAUSTED
    # per coordinate: -1 heading to 0, +1 heading to infinity, 0 otherwise
    directions: np.ndarray | None = None
    rejected_accelerations: int = 0

    @property
    def iterations(self) -> int:
        return len(self.records)

    @property
    def x(self) -> np.ndarray:
        return self.records[-1].iterate if self.records else self.x0

    @property
    def value(self) -> float:
        return self.records[-1].objective if self.records else self.f0

    @property
    def objectives(self) -> np.ndarray:
        return np.array([self.f0] + [r.objective for r in self.records])

    @property
    def converged(self) -> bool:
        return self.outcome == CONVERGED

    @property
    def diverged(self) -> bool:
        return self.outcome == DIVERGED


def relative_change(f_old: float, f_new: float) -> float:
    return (f_old - f_new) / (abs(f_old) + 1.0)


def mm_step(objective, x: np.ndarray, cfg: SolverConfig) -> tuple[np.ndarray, str, np.ndarray]:
    """One MM update: majorize at ``x`` and minimize every coordinate.

    Coordinates whose surrogate has no interior minimizer move by the
    damping factor in the decreasing direction.
    """
    report = majorize(objective, x)
    x_new = np.empty_like(x)
    directions = np.zeros(x.size, dtype=int)
    for g in report.coordinates:
        try:
            x_new[g.index] = minimize_coordinate(g, opts=cfg.inner)
        except NotCoerciveCoordinate as exc:
            directions[g.index] = exc.direction
            x_new[g.index] = x[g.index] * cfg.damping_factor**exc.direction
    kind = DAMPED if directions.any() else MM
    return x_new, kind, directions


def secant_extrapolate(x_m, m_x, U, V) -> np.ndarray | None:
    """Quasi-Newton extrapolation of a fixed-point map ``M``.

    ``U`` and ``V`` hold secant columns with ``V ~ dM . U``.  The proposal
    is ``M(x_m) + V (U'U - U'V)^{-1} U' (M(x_m) - x_m)``, the root of the
    secant model of ``x - M(x)``.  Returns ``None`` when the secant system
    is singular or not finite.
    """
    U = np.atleast_2d(np.asarray(U, dtype=float))
    V = np.atleast_2d(np.asarray(V, dtype=float))
    residual = np.asarray(m_x, dtype=float) - np.asarray(x_m, dtype=float)
    system = U.T @ U - U.T @ V
    rhs = U.T @ residual
    if not (np.all(np.isfinite(system)) and np.all(np.isfinite(rhs))):
        return None
    if np.linalg.cond(system) > 1e14:
        return None
    try:
        coef = np.linalg.solve(system, rhs)
    except np.linalg.LinAlgError:
        return None
    return m_x + V @ coef


def _guard(proposal, value, reference_value) -> tuple[np.ndarray, float] | None:
    if proposal is None or not np.all(np.isfinite(proposal)) or np.any(proposal <= 0.0):
        return None
    f_acc = value(proposal)
    if not math.isfinite(f_acc) or f_acc > reference_value:
        return None
    return proposal, f_acc


def accelerate(
    pairs: Sequence[tuple[np.ndarray, np.ndarray]],
    value: Callable[[np.ndarray], float],
    reference_value: float | None = None,
) -> tuple[np.ndarray, float] | None:
    """Guarded secant acceleration from ``q + 1`` pairs ``(x, M(x))``.

    Pairs are ordered oldest first; ``u_k`` and ``v_k`` are successive
    differences of the arguments and of the images, and the last pair
    supplies ``(x_m, M(x_m))``.  The proposal survives only inside the
    open positive orthant and only if it does not increase the objective
    relative to ``M(x_m)``.  Returns the accepted point and its value, or
    ``None``.
    """
    xs = np.array([p[0] for p in pairs], dtype=float)
    ms = np.array([p[1] for p in pairs], dtype=float)
    proposal = secant_extrapolate(xs[-1], ms[-1], np.diff(xs, axis=0).T, np.diff(ms, axis=0).T)
    if reference_value is None:
        reference_value = value(ms[-1])
    return _guard(proposal, value, reference_value)


def _check_stop(trace: IterationTrace, cfg: SolverConfig, fx: float, x_new, f_new, directions) -> bool:
    lo, hi = cfg.divergence_coordinate_bounds
    if directions.any():
        trace.directions = directions.copy()
    escaped = (x_new < lo) | (x_new > hi)
    if not math.isfinite(f_new) or f_new < cfg.divergence_value_floor or escaped.any():
        trace.outcome = DIVERGED
        dirs = trace.directions.copy()
        dirs[x_new < lo] = -1
        dirs[x_new > hi] = 1
        trace.directions = dirs
        return True
    # a coordinate still being pushed to infinity has no limit point
    if relative_change(fx, f_new) <= cfg.epsilon and not np.any(directions > 0):
        trace.outcome = CONVERGED
        return True
    return False


def iterate_map(
    step: Callable[[np.ndarray], tuple[np.ndarray, str, np.ndarray]],
    value: Callable[[np.ndarray], float],
    x0,
    cfg: SolverConfig,
) -> IterationTrace:
    """Run a descent fixed-point map until the relative-change test holds.

    ``step(x)`` returns ``(x_next, step_kind, directions)``.  Convergence
    is declared when ``(f(x_m) - f(x_{m+1})) / (|f(x_m)| + 1) <= epsilon``.

    With ``cfg.acceleration_q = q > 0`` each iteration evaluates
    ``M(x)`` and ``M(M(x))``, appends the secant pair
    ``(M(x) - x, M(M(x)) - M(x))`` to a rolling window of the ``q`` most
    recent pairs, and moves to the extrapolated point when it beats
    ``M(x)``; otherwise it moves to ``M(x)``.  Until the window is full it
    moves to ``M(M(x))``.  Damped steps clear the window.
    """
    x = np.array(x0, dtype=float)
    fx = value(x)
    trace = IterationTrace(x0=x.copy(), f0=fx, directions=np.zeros(x.size, dtype=int))
    q = cfg.acceleration_q
    U: list[np.ndarray] = []
    V: list[np.ndarray] = []

    for _ in range(cfg.max_iterations):
        x_new, kind, directions = step(x)
        f_new = value(x_new)
        if q and kind == MM and math.isfinite(f_new):
            y2, kind2, directions2 = step(x_new)
            if kind2 == MM:
                U.append(x_new - x)
                V.append(y2 - x_new)
                del U[:-q], V[:-q]
                if len(U) < q:
                    x_new, f_new = y2, value(y2)
                else:
                    result = _guard(
                        secant_extrapolate(x, x_new, np.array(U).T, np.array(V).T), value, f_new
                    )
                    if result is None:
                        trace.rejected_accelerations += 1
                    else:
                        x_new, f_new = result
                        kind = ACCELERATED
            else:
                U.clear()
                V.clear()
        elif kind != MM:
            U.clear()
            V.clear()

        trace.records.append(StepRecord(x_new, f_new, kind))
        if _check_stop(trace, cfg, fx, x_new, f_new, directions):
            return trace
        x, fx = x_new, f_new

    trace.outcome = BUDGET_EXHAUSTED
    return trace


def solve(f, x0, cfg: SolverConfig | None = None) -> IterationTrace:
    """Minimize a signomial or composite objective by the MM algorithm."""
    cfg = cfg or SolverConfig()
    if isinstance(f, Signomial):
        f = CompositeObjective(f)
    x0 = as_positive_point(x0, f.dimension)
    return iterate_map(lambda x: mm_step(f, x, cfg), f.value, x0, cfg)
