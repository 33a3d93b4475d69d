"""Signomials, positive points and composite objectives.

A signomial is a finite sum ``sum_a c_a * prod_i x_i**a_i`` over the open
positive orthant, with real (possibly negative) coefficients and real
exponent vectors.  When every coefficient is positive it is a posynomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np

__all__ = [
    "Term",
    "Signomial",
    "CompositeObjective",
    "Reduction",
    "as_positive_point",
    "evaluate",
    "gradient",
    "square",
    "clear_negative_exponents",
    "normalize_constraint",
    "monomial",
    "constant",
]


def as_positive_point(x, dimension: int | None = None) -> np.ndarray:
    """Validate ``x`` as a point of the open positive orthant.

    Returns a float copy.  Raises ``ValueError`` for nonpositive or
    non-finite entries and for a length different from ``dimension``.
    """
    arr = np.array(x, dtype=float).reshape(-1)
    if dimension is not None and arr.size != dimension:
        raise ValueError(f"expected a point of dimension {dimension}, got {arr.size}")
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0.0):
        raise ValueError(f"point must be finite and strictly positive, got {arr}")
    return arr


class Term(NamedTuple):
    coefficient: float
    exponents: tuple[float, ...]


def _canonical(exponents: Iterable[float]) -> tuple[float, ...]:
    # +0.0 for -0.0 so that keys and printed forms agree
    return tuple(float(e) + 0.0 for e in exponents)


@dataclass(frozen=True, eq=False)
class Signomial:
    """Immutable signomial in ``dimension`` positive variables.

    Terms with equal exponent vectors are merged on construction and terms
    whose coefficient is (or cancels to) zero are dropped.
    """

    dimension: int
    terms: tuple[Term, ...] = ()
    coefficients: np.ndarray = field(init=False, repr=False)
    exponents: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("dimension must be a positive integer")
        merged: dict[tuple[float, ...], float] = {}
        for coef, exps in self.terms:
            key = _canonical(exps)
            if len(key) != self.dimension:
                raise ValueError(
                    f"exponent vector {key} has length {len(key)}, expected {self.dimension}"
                )
            coef = float(coef)
            if not math.isfinite(coef) or not all(math.isfinite(e) for e in key):
                raise ValueError("coefficients and exponents must be finite")
            merged[key] = merged.get(key, 0.0) + coef
        terms = tuple(Term(c, k) for k, c in merged.items() if c != 0.0)
        object.__setattr__(self, "terms", terms)
        coefs = np.array([t.coefficient for t in terms], dtype=float)
        exps = np.array([t.exponents for t in terms], dtype=float).reshape(len(terms), self.dimension)
        coefs.flags.writeable = False
        exps.flags.writeable = False
        object.__setattr__(self, "coefficients", coefs)
        object.__setattr__(self, "exponents", exps)

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[float, Sequence[float]]], dimension: int | None = None):
        terms = [(c, tuple(e)) for c, e in terms]
        if dimension is None:
            if not terms:
                raise ValueError("dimension is required for an empty signomial")
            dimension = len(terms[0][1])
        return cls(dimension, tuple(terms))

    @classmethod
    def zero(cls, dimension: int) -> "Signomial":
        return cls(dimension, ())

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Signomial):
            return NotImplemented
        return self.dimension == other.dimension and dict(
            (t.exponents, t.coefficient) for t in self.terms
        ) == dict((t.exponents, t.coefficient) for t in other.terms)

    def __hash__(self) -> int:
        return hash((self.dimension, frozenset((t.exponents, t.coefficient) for t in self.terms)))

    @property
    def is_posynomial(self) -> bool:
        return bool(np.all(self.coefficients > 0.0))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def _coerce(self, other) -> "Signomial":
        if isinstance(other, Signomial):
            if other.dimension != self.dimension:
                raise ValueError("dimension mismatch")
            return other
        if isinstance(other, (int, float, np.floating, np.integer)):
            return constant(float(other), self.dimension)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Signomial(self.dimension, self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self):
        return Signomial(self.dimension, tuple(Term(-c, e) for c, e in self.terms))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            return Signomial(self.dimension, tuple(Term(c * float(other), e) for c, e in self.terms))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        products = [
            (c1 * c2, tuple(a + b for a, b in zip(e1, e2)))
            for c1, e1 in self.terms
            for c2, e2 in other.terms
        ]
        return Signomial(self.dimension, tuple(products))

    __rmul__ = __mul__

    def __call__(self, x) -> float:
        return evaluate(self, x)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for c, e in self.terms:
            factors = [
                f"x{i + 1}" if a == 1 else f"x{i + 1}^{a:g}" for i, a in enumerate(e) if a != 0
            ]
            parts.append("*".join([f"{c:g}"] + factors))
        return " + ".join(parts).replace("+ -", "- ")


def monomial(coefficient: float, exponents: Sequence[float]) -> Signomial:
    return Signomial(len(exponents), (Term(coefficient, tuple(exponents)),))


def constant(value: float, dimension: int) -> Signomial:
    return Signomial(dimension, (Term(value, (0.0,) * dimension),))


def _check_dimension(f: Signomial, x: np.ndarray) -> None:
    if x.shape != (f.dimension,):
        raise ValueError(f"dimension mismatch: signomial has {f.dimension} variables, point has {x.size}")


def term_values(f: Signomial, x) -> np.ndarray:
    """Values ``c_a * x**a`` of each term, computed as ``c_a * exp(a . ln x)``."""
    x = np.asarray(x, dtype=float)
    _check_dimension(f, x)
    if not f.terms:
        return np.zeros(0)
    with np.errstate(over="ignore"):
        return f.coefficients * np.exp(f.exponents @ np.log(x))


def evaluate(f: Signomial, x, *, with_overflow_flag: bool = False):
    """Value of ``f`` at the positive point ``x``.

    Overflow yields ``+inf`` or ``-inf`` (the sign of the dominant term
    group).  With ``with_overflow_flag=True`` a ``(value, overflowed)`` pair
    is returned.
    """
    values = term_values(f, x)
    overflow = bool(np.any(np.isinf(values)))
    if not overflow:
        value = float(values.sum())
    else:
        # compare the two sign groups in the log domain
        logs = np.log(np.abs(f.coefficients)) + f.exponents @ np.log(np.asarray(x, dtype=float))
        pos = logs[f.coefficients > 0]
        neg = logs[f.coefficients < 0]
        top_pos = pos.max() if pos.size else -np.inf
        top_neg = neg.max() if neg.size else -np.inf
        value = math.inf if top_pos >= top_neg else -math.inf
    if with_overflow_flag:
        return value, overflow
    return value


def gradient(f: Signomial, x) -> np.ndarray:
    """Exact partial derivatives ``sum_a c_a a_i x**a / x_i``."""
    x = np.asarray(x, dtype=float)
    values = term_values(f, x)
    if values.size == 0:
        return np.zeros(f.dimension)
    return (values @ f.exponents) / x


def square(f: Signomial) -> Signomial:
    return f * f


def clear_negative_exponents(r: Signomial) -> Signomial:
    """Multiply ``r`` by ``x**mu`` with ``mu_i = max_b max(-b_i, 0)``.

    The result has only nonnegative exponents and the same zero set as
    ``r`` on the positive orthant.
    """
    if not r.terms:
        return r
    mu = np.maximum(-r.exponents.min(axis=0), 0.0)
    if not np.any(mu):
        return r
    return r * monomial(1.0, mu)


def normalize_constraint(h: Signomial) -> Signomial:
    """Rewrite ``h(x) = 1`` (or ``h(x) <= 1``) as ``r(x) = 0`` (``<= 0``).

    ``r = x**mu * h - x**mu`` has nonnegative exponents only.
    """
    if not h.terms:
        return constant(-1.0, h.dimension)
    mu = np.maximum(-h.exponents.min(axis=0), 0.0)
    scale = monomial(1.0, mu)
    return scale * h - scale


class Reduction(NamedTuple):
    """An anchored upper bound ``signomial(x) + log_weights . ln x + constant``.

    The bound holds for every positive ``x`` and is tight at the anchor.
    """

    signomial: Signomial
    log_weights: np.ndarray
    constant: float


@dataclass(frozen=True)
class CompositeObjective:
    """``plain(x) - ln neg_log(x) + ln log(x)``.

    ``neg_log`` and ``log`` are optional posynomials.  With both absent
    this is just the signomial ``plain``.
    """

    plain: Signomial
    neg_log: Signomial | None = None
    log: Signomial | None = None

    def __post_init__(self):
        for name in ("neg_log", "log"):
            part = getattr(self, name)
            if part is None:
                continue
            if part.dimension != self.plain.dimension:
                raise ValueError(f"{name} dimension does not match the plain part")
            if not part.terms or not part.is_posynomial:
                raise ValueError(f"{name} composition requires a nonempty posynomial")

    @classmethod
    def of(cls, f: "Signomial | CompositeObjective") -> "CompositeObjective":
        return f if isinstance(f, CompositeObjective) else cls(f)

    @property
    def dimension(self) -> int:
        return self.plain.dimension

    @property
    def mode(self) -> str:
        if self.neg_log is not None and self.log is None:
            return "plain-plus-neg-log" if self.plain.terms else "neg-log"
        if self.log is not None and self.neg_log is None:
            return "plain-plus-log" if self.plain.terms else "log"
        if self.log is None and self.neg_log is None:
            return "plain"
        return "mixed"

    def value(self, x) -> float:
        x = np.asarray(x, dtype=float)
        total = evaluate(self.plain, x)
        # posynomials are positive; 0 here means underflow
        if self.neg_log is not None:
            inner = evaluate(self.neg_log, x)
            total -= math.log(inner) if inner > 0 else -math.inf
        if self.log is not None:
            inner = evaluate(self.log, x)
            total += math.log(inner) if inner > 0 else -math.inf
        return total

    __call__ = value

    def gradient(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        g = gradient(self.plain, x)
        if self.neg_log is not None:
            g = g - gradient(self.neg_log, x) / evaluate(self.neg_log, x)
        if self.log is not None:
            g = g + gradient(self.log, x) / evaluate(self.log, x)
        return g

    def reduce_at(self, anchor) -> Reduction:
        """Replace the log compositions by bounds tight at ``anchor``.

        ``-ln f`` is bounded through Jensen's inequality with weights
        ``a_a / b`` (``a_a`` the term values at the anchor, ``b`` their
        sum); ``ln f`` through its tangent line, which leaves the
        posynomial ``f / f(anchor)`` to be majorized with the plain part.
        """
        x_m = np.asarray(anchor, dtype=float)
        n = self.dimension
        sig = self.plain
        log_weights = np.zeros(n)
        const = 0.0
        if self.neg_log is not None:
            a = term_values(self.neg_log, x_m)
            b = a.sum()
            p = a / b
            log_weights -= p @ self.neg_log.exponents
            const -= float(p @ np.log(self.neg_log.coefficients * b / a))
        if self.log is not None:
            f_m = evaluate(self.log, x_m)
            sig = sig + self.log * (1.0 / f_m)
            const += math.log(f_m) - 1.0
        return Reduction(sig, log_weights, const)
