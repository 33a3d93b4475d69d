"""Closed-form MM updates for quadratic programs over the positive orthant.

The problem is ``min 0.5 x'Qx + c'x`` subject to ``Ax <= b``, ``Ex = d``
and ``x > 0``, handled by quadratic penalties ``(lam/2)|(Ax - b)_+|^2 +
(lam/2)|Ex - d|^2``.  At each anchor the penalized objective is majorized
by ``0.5 x'Hx + v'x`` and the off-diagonal terms of ``H`` are separated by
sign, so every coordinate update is the positive root of a quadratic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .driver import MM, IterationTrace, SolverConfig, iterate_map
from .penalty import PenaltyResult, PenaltySchedule, PenaltyStage
from .signomial import as_positive_point

__all__ = [
    "QpProblem",
    "PenalizedQpState",
    "QpUpdateError",
    "penalized_state",
    "qp_update",
    "qp_penalized_value",
    "solve_qp",
    "SKIPPED",
]

SKIPPED = "skipped"


def _matrix(a, cols: int) -> np.ndarray:
    a = np.asarray(a if a is not None else np.zeros((0, cols)), dtype=float)
    if a.size == 0:
        return np.zeros((0, cols))
    return np.atleast_2d(a)


@dataclass(frozen=True)
class QpProblem:
    """``min 0.5 x'Qx + c'x`` s.t. ``Ax <= b``, ``Ex = d``, ``x > 0``.

    ``Q`` is symmetrized on construction.  Either constraint system may be
    omitted.
    """

    Q: np.ndarray
    c: np.ndarray
    A: np.ndarray = field(default=None)
    b: np.ndarray = field(default=None)
    E: np.ndarray = field(default=None)
    d: np.ndarray = field(default=None)

    def __post_init__(self):
        Q = np.atleast_2d(np.asarray(self.Q, dtype=float))
        n = Q.shape[0]
        if Q.shape != (n, n):
            raise ValueError("Q must be square")
        c = np.asarray(self.c, dtype=float).reshape(-1)
        if c.shape != (n,):
            raise ValueError("c must have one entry per variable")
        A = _matrix(self.A, n)
        E = _matrix(self.E, n)
        b = np.asarray(self.b if self.b is not None else [], dtype=float).reshape(-1)
        d = np.asarray(self.d if self.d is not None else [], dtype=float).reshape(-1)
        if A.shape[1] != n or E.shape[1] != n:
            raise ValueError("constraint matrices must have one column per variable")
        if b.shape != (A.shape[0],) or d.shape != (E.shape[0],):
            raise ValueError("right-hand sides must match the constraint rows")
        for name, arr in (("Q", 0.5 * (Q + Q.T)), ("c", c), ("A", A), ("b", b), ("E", E), ("d", d)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def dimension(self) -> int:
        return self.c.size

    def objective(self, x) -> float:
        x = np.asarray(x, dtype=float)
        return float(0.5 * x @ self.Q @ x + self.c @ x)

    def penalty_matrix(self, lam: float) -> np.ndarray:
        return self.Q + lam * (self.A.T @ self.A + self.E.T @ self.E)


@dataclass(frozen=True)
class PenalizedQpState:
    """Surrogate data at one anchor: ``0.5 x'Hx + v'x`` up to a constant."""

    lam: float
    H: np.ndarray
    v: np.ndarray
    r: np.ndarray


class QpUpdateError(ArithmeticError):
    """The positive part ``h+_i`` of a row of ``H`` vanished at the anchor."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"coordinate {index}: no positive entries in its row of the penalized Hessian")


def penalized_state(p: QpProblem, lam: float, x_m, H: np.ndarray | None = None) -> PenalizedQpState:
    """Build ``H = Q + lam(A'A + E'E)`` (unless given) and ``v`` at ``x_m``."""
    x_m = np.asarray(x_m, dtype=float)
    if H is None:
        H = p.penalty_matrix(lam)
    r = np.minimum(p.A @ x_m - p.b, 0.0)
    v = p.c - lam * (p.A.T @ (p.b + r)) - lam * (p.E.T @ p.d)
    return PenalizedQpState(float(lam), H, v, r)


def qp_update(x_m, state: PenalizedQpState, eps_floor: float = 1e-9) -> np.ndarray:
    """One MM step for the penalized quadratic.

    Coordinate ``i`` moves to the positive root of
    ``h+_i t^2 + v_i t + h-_i = 0`` scaled by ``x_mi``, where ``h+`` and
    ``h-`` collect the positive and negative entries of row ``i`` of ``H``
    weighted by ``x_m``.  If ``h-_i = 0`` the root ``-v_i / h+_i`` is
    floored at ``eps_floor``.
    """
    x_m = np.asarray(x_m, dtype=float)
    H = state.H
    h_pos = np.where(H > 0, H, 0.0) @ x_m
    h_neg = np.where(H < 0, H, 0.0) @ x_m
    bad = np.flatnonzero(h_pos <= 0)
    if bad.size:
        raise QpUpdateError(int(bad[0]))
    v = state.v
    out = np.empty_like(x_m)
    for i in range(x_m.size):
        hp, hn, vi = h_pos[i], h_neg[i], v[i]
        if hn == 0.0:
            out[i] = x_m[i] * max(-vi / hp, eps_floor)
            continue
        disc = vi * vi - 4.0 * hn * hp
        assert disc >= 0.0
        root = math.sqrt(disc)
        # avoid cancellation between -v and the square root
        if vi > 0:
            out[i] = x_m[i] * (-2.0 * hn) / (vi + root)
        else:
            out[i] = x_m[i] * (-vi + root) / (2.0 * hp)
    return out


def qp_penalized_value(p: QpProblem, lam: float, x) -> float:
    """``0.5 x'Qx + c'x + (lam/2)|(Ax-b)_+|^2 + (lam/2)|Ex-d|^2``."""
    x = np.asarray(x, dtype=float)
    viol = np.maximum(p.A @ x - p.b, 0.0)
    eq = p.E @ x - p.d
    return p.objective(x) + 0.5 * lam * float(viol @ viol + eq @ eq)


def _infeasibility(p: QpProblem, x) -> float:
    viol = np.maximum(p.A @ x - p.b, 0.0)
    eq = p.E @ x - p.d
    return float(viol @ viol + eq @ eq)


def solve_qp(
    p: QpProblem,
    x0,
    schedule: PenaltySchedule | None = None,
    eps_floor: float = 1e-9,
    penalty_scale: float = 2.0,
) -> PenaltyResult:
    """Penalty path for a positive-orthant QP using the closed-form updates.

    The stage for schedule entry ``lam`` minimizes
    ``qp_penalized_value(p, penalty_scale * lam, x)``.  The default scale 2
    gives ``f + lam |(Ax - b)_+|^2 + lam |Ex - d|^2``, the same weighting as
    :func:`signomial_mm.penalty.solve_constrained`.

    Each stage iterates :func:`qp_update` with the stage's ``H`` fixed and
    ``v`` refreshed every step.  A stage whose ``H`` has a row without
    positive entries at the current point is skipped.
    """
    if eps_floor <= 0 or penalty_scale <= 0:
        raise ValueError("eps_floor and penalty_scale must be positive")
    schedule = schedule or PenaltySchedule()
    cfg: SolverConfig = schedule.inner_config
    x0 = as_positive_point(x0, p.dimension)
    x = x0
    stages: list[PenaltyStage] = []
    zeros = np.zeros(p.dimension, dtype=int)
    for lam in schedule.lambdas:
        weight = penalty_scale * lam
        H = p.penalty_matrix(weight)

        def step(z, weight=weight, H=H):
            return qp_update(z, penalized_state(p, weight, z, H), eps_floor), MM, zeros

        def value(z, weight=weight):
            return qp_penalized_value(p, weight, z)

        start = x if schedule.warm_start else x0
        try:
            trace = iterate_map(step, value, start, cfg)
        except QpUpdateError:
            trace = IterationTrace(x0=start.copy(), f0=value(start), outcome=SKIPPED)
            stages.append(PenaltyStage(lam, trace, start.copy(), _infeasibility(p, start), skipped=True))
            continue
        x_lam = trace.x
        stages.append(PenaltyStage(lam, trace, x_lam, _infeasibility(p, x_lam)))
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
