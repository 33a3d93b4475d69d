"""Checkable conditions for posynomials: convexity, coercivity, attainment.

With ``x = exp(y)`` a posynomial becomes ``sum_a c_a exp(a.y)``.  Its
behaviour is governed by the set ``S`` of exponent vectors:

* strictly convex in ``y`` iff ``S`` spans ``R^n``;
* coercive iff every ``v != 0`` has ``max_a a.v > 0``, i.e. the cone
  ``{v : a.v <= 0 for all a}`` is trivial;
* the infimum is attained iff ``0`` lies in the convex hull of ``S``;
  otherwise some ``v`` has ``a.v < 0`` for every ``a`` and the function
  decreases along ``exp(t v)``.

Negative answers come with certificates that are re-checked against every
exponent vector before being returned.  Signomial inputs get ``unknown``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog, minimize

from .signomial import CompositeObjective, Signomial

__all__ = [
    "YES",
    "NO",
    "UNKNOWN",
    "Verdict",
    "ConvexityResult",
    "DiagnosticsReport",
    "ChecklistReport",
    "exponent_rank",
    "check_strict_convexity",
    "check_coercive",
    "check_bounded_below",
    "auxiliary_min_t",
    "diagnose",
    "mm_convergence_checklist",
]

YES = "yes"
NO = "no"
UNKNOWN = "unknown"

# certificates must satisfy their inequalities to this tolerance
CERTIFICATE_TOL = 1e-9


@dataclass(frozen=True)
class Verdict:
    status: str
    certificate: np.ndarray | None = None
    note: str = ""
    t_min: float | None = None

    def __bool__(self) -> bool:
        return self.status == YES


@dataclass(frozen=True)
class ConvexityResult:
    strictly_convex: bool | None
    rank: int
    note: str = ""


@dataclass(frozen=True)
class DiagnosticsReport:
    strictly_convex: bool | None
    coercive: Verdict
    bounded_below: Verdict
    exponent_rank: int


def _exponents(f) -> tuple[np.ndarray, bool]:
    if isinstance(f, CompositeObjective):
        if f.mode != "plain":
            return f.plain.exponents, False
        f = f.plain
    if isinstance(f, Signomial):
        return f.exponents, f.is_posynomial
    S = np.atleast_2d(np.asarray(f, dtype=float))
    return S, True


def exponent_rank(S: np.ndarray) -> int:
    S = np.atleast_2d(np.asarray(S, dtype=float))
    if S.size == 0:
        return 0
    sv = np.linalg.svd(S, compute_uv=False)
    if sv[0] == 0:
        return 0
    return int(np.sum(sv > 1e-10 * sv[0]))


def check_strict_convexity(f) -> ConvexityResult:
    """Rank test on the exponent matrix.

    ``f`` may be a signomial, a composite objective or a raw exponent
    matrix (rows are exponent vectors).
    """
    S, posy = _exponents(f)
    n = S.shape[1]
    rank = exponent_rank(S)
    if not posy:
        return ConvexityResult(None, rank, "not a posynomial; the rank test does not apply")
    return ConvexityResult(rank == n, rank)


def auxiliary_min_t(S, starts: int = 20, seed: int | None = 0) -> tuple[float, np.ndarray, bool]:
    """``min t`` subject to ``a.y <= t`` for all ``a`` in ``S`` and ``|y| = 1``.

    Multistart SLSQP from the signed unit vectors and random directions.
    Returns ``(t_min, y, ok)`` where ``ok`` says that some start converged.
    """
    S = np.atleast_2d(np.asarray(S, dtype=float))
    n = S.shape[1]
    if n == 1:
        cands = [np.array([1.0]), np.array([-1.0])]
        vals = [float(np.max(S @ y)) for y in cands]
        k = int(np.argmin(vals))
        return vals[k], cands[k], True

    rng = np.random.default_rng(seed)
    inits = [s * e for e in np.eye(n) for s in (1.0, -1.0)]
    inits += list(rng.standard_normal((starts, n)))
    cons = [
        {"type": "ineq", "fun": lambda z: z[-1] - S @ z[:-1], "jac": lambda z: np.hstack([-S, np.ones((len(S), 1))])},
        {"type": "eq", "fun": lambda z: z[:-1] @ z[:-1] - 1.0, "jac": lambda z: np.append(2 * z[:-1], 0.0)},
    ]
    best_t, best_y, ok = np.inf, None, False
    for y0 in inits:
        y0 = y0 / np.linalg.norm(y0)
        z0 = np.append(y0, np.max(S @ y0))
        res = minimize(
            lambda z: z[-1],
            z0,
            jac=lambda z: np.append(np.zeros(n), 1.0),
            constraints=cons,
            method="SLSQP",
            options={"ftol": 1e-14, "maxiter": 500},
        )
        y = res.x[:-1]
        norm = np.linalg.norm(y)
        if not np.isfinite(norm) or norm == 0:
            continue
        y = y / norm
        t = float(np.max(S @ y))
        ok = ok or res.success
        if t < best_t:
            best_t, best_y = t, y
    if best_y is None:
        return np.inf, np.zeros(n), False
    return best_t, best_y, ok


def _unit(v):
    norm = np.linalg.norm(v)
    return v / norm if norm > 0 else v


def _recession_direction(S: np.ndarray) -> tuple[np.ndarray | None, bool]:
    """Nonzero ``v`` with ``S v <= 0``, or ``None`` when the cone is trivial.

    Decided by maximizing each ``+-v_k`` over the cone cut by the unit box.
    The second return value is ``False`` when an LP failed.
    """
    n = S.shape[1]
    for k in range(n):
        for sign in (1.0, -1.0):
            cost = np.zeros(n)
            cost[k] = -sign
            res = linprog(cost, A_ub=S, b_ub=np.zeros(len(S)), bounds=[(-1, 1)] * n, method="highs")
            if res.status != 0:
                return None, False
            if -res.fun > 1e-7:
                return res.x, True
    return None, True


def check_coercive(f, seed: int | None = 0, starts: int = 20) -> Verdict:
    """Is ``max_a a.v > 0`` for every nonzero ``v``?

    The answer comes from linear programs over the cone ``S v <= 0``.  The
    sphere program :func:`auxiliary_min_t` supplies ``t_min`` and, for a
    negative answer, a well-spread certificate ``v`` (unit norm) with
    ``max_a a.v <= 0``.
    """
    S, posy = _exponents(f)
    if not posy:
        return Verdict(UNKNOWN, note="not a posynomial; coercivity test does not apply")
    t_min, y, _ = auxiliary_min_t(S, starts=starts, seed=seed)
    v, ok = _recession_direction(S)
    if not ok:
        return Verdict(UNKNOWN, note="linear program failed", t_min=t_min)
    if v is None:
        return Verdict(YES, t_min=t_min)
    for cand in (y, _unit(v)):
        if np.max(S @ cand) <= CERTIFICATE_TOL:
            return Verdict(NO, certificate=cand, t_min=t_min, note="max over exponents of a.v is <= 0")
    return Verdict(UNKNOWN, note="could not produce a sound certificate", t_min=t_min)


def check_bounded_below(f, seed: int | None = 0, starts: int = 20) -> Verdict:
    """Does the posynomial attain its infimum, i.e. is ``0`` in ``conv(S)``?

    ``yes``: convex weights ``p`` with ``sum p_a a = 0`` exist.  ``no``: the
    certificate ``v`` (unit norm) has ``a.v < 0`` for every ``a``, so the
    value decreases strictly along ``x = exp(t v)`` and the infimum is
    approached only at the boundary or at infinity.
    """
    S, posy = _exponents(f)
    if not posy:
        return Verdict(UNKNOWN, note="not a posynomial; hull test does not apply")
    m, n = S.shape
    res = linprog(
        np.zeros(m),
        A_eq=np.vstack([S.T, np.ones((1, m))]),
        b_eq=np.append(np.zeros(n), 1.0),
        bounds=[(0, None)] * m,
        method="highs",
    )
    if res.status == 0:
        return Verdict(YES, note="origin lies in the convex hull of the exponents")
    if res.status != 2:
        return Verdict(UNKNOWN, note="linear program failed")

    # min t s.t. S v <= t, |v_k| <= 1
    cost = np.append(np.zeros(n), 1.0)
    sep = linprog(
        cost,
        A_ub=np.hstack([S, -np.ones((m, 1))]),
        b_ub=np.zeros(m),
        bounds=[(-1, 1)] * n + [(None, None)],
        method="highs",
    )
    candidates = []
    t_min, y, _ = auxiliary_min_t(S, starts=starts, seed=seed)
    candidates.append(y)
    if sep.status == 0:
        candidates.append(_unit(sep.x[:n]))
    for cand in candidates:
        if np.max(S @ cand) < -CERTIFICATE_TOL:
            return Verdict(NO, certificate=cand, t_min=t_min, note="a.v < 0 for every exponent a")
    return Verdict(UNKNOWN, note="origin outside the hull but no sound certificate", t_min=t_min)


def diagnose(f, seed: int | None = 0) -> DiagnosticsReport:
    conv = check_strict_convexity(f)
    return DiagnosticsReport(
        strictly_convex=conv.strictly_convex,
        coercive=check_coercive(f, seed=seed),
        bounded_below=check_bounded_below(f, seed=seed),
        exponent_rank=conv.rank,
    )


@dataclass
class ChecklistReport:
    """Which convergence conditions held on one MM run."""

    coercive: Verdict
    strictly_convex: bool | None
    continuity: str
    gradient_norm: float
    stationary: bool | None
    descent: bool
    strict_descent_until: int
    notes: list[str] = field(default_factory=list)


def mm_convergence_checklist(f, trace, gradient_tol: float = 1e-3, slack: float = 1e-12) -> ChecklistReport:
    """Check the empirically testable convergence conditions on a run.

    Coercivity and strict convexity come from the exponent tests (posynomials
    only); continuity of the iteration map is assumed; stationarity of the
    terminal point is checked with the analytic gradient; descent is checked
    on every recorded step with slack ``slack * (1 + |f|)``.
    """
    coercive = check_coercive(f)
    conv = check_strict_convexity(f)
    notes: list[str] = []
    x = trace.x
    gnorm = float(np.linalg.norm(CompositeObjective.of(f).gradient(x)))
    stationary = None if trace.diverged else gnorm <= gradient_tol

    values = trace.objectives
    diffs = values[:-1] - values[1:]
    descent = bool(np.all(diffs >= -slack * (1.0 + np.abs(values[:-1]))))
    strict = np.flatnonzero(diffs <= 0)
    strict_until = int(strict[0]) if strict.size else len(diffs)

    if coercive.status == NO:
        notes.append(f"not coercive: iterates may escape along direction {np.round(coercive.certificate, 4)}")
    if conv.strictly_convex is False:
        notes.append(f"exponent rank {conv.rank} < {x.size}: minima may form a continuum")
    if trace.diverged:
        notes.append("run diverged; stationarity not checked")
    return ChecklistReport(
        coercive=coercive,
        strictly_convex=conv.strictly_convex,
        continuity="assumed",
        gradient_norm=gnorm,
        stationary=stationary,
        descent=descent,
        strict_descent_until=strict_until,
        notes=notes,
    )
