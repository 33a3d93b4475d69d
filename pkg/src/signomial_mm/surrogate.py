"""Parameter-separated majorizers and their one-dimensional minimization.

At an anchor ``x_m`` each positive term ``c x**a`` is bounded by the
arithmetic-geometric mean inequality applied to the ratios
``(x_i / x_mi)**sgn(a_i)``, and each negative term by the supporting line
``z >= 1 + ln z``.  The resulting surrogate is a sum of univariate pieces

    g_i(x_i) = sum_k w_k x_i**p_k + L_i ln x_i

which are strictly convex in ``y = ln x_i`` whenever some ``w_k > 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .signomial import CompositeObjective, Reduction, Signomial, term_values

__all__ = [
    "InnerSolveOptions",
    "SurrogateCoordinate",
    "SurrogateReport",
    "NotCoerciveCoordinate",
    "majorize",
    "minimize_coordinate",
    "reduce_objective",
]

# exp() argument cap; beyond this the sign of the derivative is all that matters
_EXP_CAP = 700.0
_EPS = float(np.finfo(float).eps)


@dataclass(frozen=True)
class InnerSolveOptions:
    inner_tolerance: float = 1e-12
    max_inner_iterations: int = 100
    bracket_expansion_factor: float = 10.0

    def __post_init__(self):
        if self.inner_tolerance <= 0 or self.max_inner_iterations < 1 or self.bracket_expansion_factor <= 1:
            raise ValueError("inner solve options must be positive (expansion factor > 1)")


class NotCoerciveCoordinate(ArithmeticError):
    """The coordinate surrogate has no minimizer on ``(0, inf)``.

    ``direction`` is ``-1`` when the surrogate keeps decreasing as the
    coordinate goes to 0 and ``+1`` when it decreases toward infinity.
    """

    def __init__(self, index: int, direction: int):
        self.index = index
        self.direction = direction
        where = "0" if direction < 0 else "infinity"
        super().__init__(f"surrogate for coordinate {index} decreases without bound toward {where}")


@dataclass(frozen=True)
class SurrogateCoordinate:
    """``g(x) = sum_k W_k (x / anchor)**p_k + log_weight * ln x``.

    ``scaled_weights`` are the term values ``W_k`` at the anchor; the
    absolute weights ``w_k = W_k / anchor**p_k`` are available as
    :attr:`weights`.
    """

    index: int
    anchor: float
    powers: tuple[float, ...]
    scaled_weights: tuple[float, ...]
    log_weight: float = 0.0

    @property
    def weights(self) -> tuple[float, ...]:
        return tuple(W / self.anchor**p for W, p in zip(self.scaled_weights, self.powers))

    def value(self, x: float) -> float:
        t = x / self.anchor
        return sum(W * t**p for W, p in zip(self.scaled_weights, self.powers)) + self.log_weight * math.log(x)

    def derivative(self, x: float) -> float:
        t = x / self.anchor
        return (sum(W * p * t**p for W, p in zip(self.scaled_weights, self.powers)) + self.log_weight) / x

    def log_derivatives(self, z: float) -> tuple[float, float, float]:
        """First and second derivative in ``z = ln(x / anchor)``, plus a magnitude scale."""
        d1 = self.log_weight
        d2 = 0.0
        scale = abs(self.log_weight)
        for W, p in zip(self.scaled_weights, self.powers):
            e = W * math.exp(min(p * z, _EXP_CAP))
            d1 += p * e
            d2 += p * p * e
            scale += abs(p * e)
        return d1, d2, scale

    def log_second_derivative(self, y: float) -> float:
        """Second derivative of ``g(exp(y))`` at ``y``."""
        return self.log_derivatives(y - math.log(self.anchor))[1]


@dataclass(frozen=True)
class SurrogateReport:
    coordinates: tuple[SurrogateCoordinate, ...]
    anchor: np.ndarray
    constant_offset: float

    def value(self, x) -> float:
        return sum(g.value(float(xi)) for g, xi in zip(self.coordinates, x)) + self.constant_offset

    def derivatives(self, x) -> np.ndarray:
        return np.array([g.derivative(float(xi)) for g, xi in zip(self.coordinates, x)])


def reduce_objective(f, x_m) -> Reduction:
    """Anchor-dependent signomial bound of a signomial or composite objective."""
    if isinstance(f, Signomial):
        f = CompositeObjective(f)
    return f.reduce_at(x_m)


def majorize(f, x_m) -> SurrogateReport:
    """Separated majorizer of ``f`` tangent at ``x_m``.

    ``f`` is a :class:`Signomial`, a :class:`CompositeObjective`, or any
    object with a ``reduce_at(x_m) -> Reduction`` method (penalized
    objectives use this).
    """
    x_m = np.asarray(x_m, dtype=float)
    red = reduce_objective(f, x_m)
    sig = red.signomial
    n = x_m.size
    if sig.dimension != n or red.log_weights.shape != (n,):
        raise ValueError(f"dimension mismatch: objective has {sig.dimension} variables, anchor has {n}")

    log_x = np.log(x_m)
    log_weights = np.array(red.log_weights, dtype=float)
    offset = float(red.constant)
    buckets: list[dict[float, float]] = [{} for _ in range(n)]

    if sig.terms:
        a = term_values(sig, x_m)
        alpha = sig.exponents
        pos = sig.coefficients > 0
        neg = ~pos

        # negative terms: c x^a >= a_m (1 + a.(ln x - ln x_m)) reversed by c < 0
        if np.any(neg):
            a_neg = a[neg]
            log_weights += a_neg @ alpha[neg]
            offset += float(np.sum(a_neg * (1.0 - alpha[neg] @ log_x)))

        norms = np.abs(alpha[pos]).sum(axis=1)
        a_pos = a[pos]
        offset += float(a_pos[norms == 0].sum())
        for row, value, norm in zip(alpha[pos], a_pos, norms):
            if norm == 0:
                continue
            for i in np.flatnonzero(row):
                p = float(norm * np.sign(row[i]))
                share = value * abs(row[i]) / norm
                buckets[i][p] = buckets[i].get(p, 0.0) + share

    coords = tuple(
        SurrogateCoordinate(
            index=i,
            anchor=float(x_m[i]),
            powers=tuple(buckets[i].keys()),
            scaled_weights=tuple(buckets[i].values()),
            log_weight=float(log_weights[i]),
        )
        for i in range(n)
    )
    return SurrogateReport(coords, x_m.copy(), offset)


def minimize_coordinate(g: SurrogateCoordinate, x_mi: float | None = None, opts: InnerSolveOptions | None = None) -> float:
    """Global minimizer of a coordinate surrogate on ``(0, inf)``.

    Works in ``z = ln(x / x_mi)``, where the surrogate is strictly convex,
    with Newton steps started at ``z = 0``.  Every evaluated point narrows
    a bracket around the root of the derivative; a step that leaves the
    bracket is replaced by bisection, and an overlong step toward an
    unbounded side is clipped to ``ln(bracket_expansion_factor)``, the clip
    doubling while it keeps binding.  When ``max_inner_iterations`` runs
    out the current point is returned, so small budgets give a truncated
    Newton solve.  Raises :class:`NotCoerciveCoordinate` when no stationary
    point exists.
    """
    opts = opts or InnerSolveOptions()
    if x_mi is not None and x_mi != g.anchor:
        g = SurrogateCoordinate(
            g.index,
            float(x_mi),
            g.powers,
            tuple(w * float(x_mi) ** p for w, p in zip(g.weights, g.powers)),
            g.log_weight,
        )
    x_mi = g.anchor
    L = g.log_weight
    has_pos = any(p > 0 for p in g.powers)
    has_neg = any(p < 0 for p in g.powers)
    if not has_pos and not has_neg:
        if L == 0.0:
            return x_mi
        raise NotCoerciveCoordinate(g.index, -1 if L > 0 else 1)
    if not has_neg and L >= 0.0:
        raise NotCoerciveCoordinate(g.index, -1)
    if not has_pos and L <= 0.0:
        raise NotCoerciveCoordinate(g.index, 1)

    tol = opts.inner_tolerance
    base_clip = math.log(opts.bracket_expansion_factor)
    clip = base_clip
    lo, hi = -math.inf, math.inf
    z = 0.0
    for _ in range(opts.max_inner_iterations):
        d1, d2, scale = g.log_derivatives(z)
        if abs(d1) <= tol * scale:
            break
        if d1 > 0:
            hi = z
        else:
            lo = z
        step = -d1 / d2 if d2 > 0 else math.copysign(math.inf, -d1)
        unbounded_side = hi == math.inf if step > 0 else lo == -math.inf
        if unbounded_side and abs(step) > clip:
            step = math.copysign(clip, step)
            clip *= 2.0
        else:
            clip = base_clip
        z_new = z + step
        if not lo < z_new < hi:
            z_new = 0.5 * (lo + hi)
        if abs(z_new - z) <= 4.0 * _EPS * max(1.0, abs(z)):
            z = z_new
            break
        z = z_new
    return x_mi * math.exp(z)
