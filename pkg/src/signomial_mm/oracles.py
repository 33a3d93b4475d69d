"""Independent reference computations used to check the solvers.

These deliberately avoid the surrogate machinery: exhaustive grids, the
hand-derived coordinate updates for the small test functions, and central
finite differences.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .signomial import Signomial

__all__ = [
    "GridSpec",
    "grid_minimize",
    "closed_form_updates",
    "CLOSED_FORM_NAMES",
    "finite_difference_gradient",
]

# exhaustive grids beyond this many points are refused
MAX_GRID_POINTS = 20_000_000


@dataclass(frozen=True)
class GridSpec:
    """Per-coordinate log-spaced grids ``(lower, upper, count)``."""

    axes: tuple[tuple[float, float, int], ...]

    def __post_init__(self):
        axes = tuple((float(lo), float(hi), int(k)) for lo, hi, k in self.axes)
        for lo, hi, k in axes:
            if not 0 < lo <= hi or k < 2:
                raise ValueError("grid axes need 0 < lower <= upper and count >= 2")
        object.__setattr__(self, "axes", axes)

    @classmethod
    def uniform(cls, lower: float, upper: float, count: int, dimension: int) -> "GridSpec":
        return cls(((lower, upper, count),) * dimension)

    @property
    def dimension(self) -> int:
        return len(self.axes)

    def points(self) -> list[np.ndarray]:
        return [np.geomspace(lo, hi, k) for lo, hi, k in self.axes]


def grid_minimize(f: Callable[[np.ndarray], float], grid: GridSpec) -> tuple[np.ndarray, float]:
    """Best grid point of ``f`` by exhaustive evaluation (dimension <= 4)."""
    if grid.dimension > 4:
        raise ValueError("grid_minimize is limited to 4 dimensions")
    total = int(np.prod([k for _, _, k in grid.axes]))
    if total > MAX_GRID_POINTS:
        raise ValueError(f"grid has {total} points, more than {MAX_GRID_POINTS}")
    axes = grid.points()
    if isinstance(f, Signomial):
        return _grid_minimize_signomial(f, axes)
    best_x, best_v = None, np.inf
    # rows of the grid one at a time keep memory flat
    for head in itertools.product(*axes[:-1]):
        for last in axes[-1]:
            x = np.array(head + (last,))
            v = f(x)
            if v < best_v:
                best_x, best_v = x, v
    return best_x, float(best_v)


def _grid_minimize_signomial(f: Signomial, axes) -> tuple[np.ndarray, float]:
    if not f.terms:
        return np.array([a[0] for a in axes]), 0.0
    # one slab per value of the first coordinate
    rest = np.stack(np.meshgrid(*axes[1:], indexing="ij"), axis=-1).reshape(-1, len(axes) - 1) if len(axes) > 1 else np.zeros((1, 0))
    best_x, best_v = None, np.inf
    for x0 in axes[0]:
        mesh = np.hstack([np.full((len(rest), 1), x0), rest])
        values = np.exp(np.log(mesh) @ f.exponents.T) @ f.coefficients
        k = int(np.argmin(values))
        if values[k] < best_v:
            best_x, best_v = mesh[k], float(values[k])
    return best_x, best_v


def _f1(x):
    x1, x2 = x
    return np.array([(3.0 * (x1**2 / x2**2 + 1.0) * x1 / x2) ** 0.2, (6.0 * x2**2 / x1**2) ** 0.2])


def _f2(x):
    x1, x2 = x
    return np.array([np.cbrt(x1**2 / x2**2), np.cbrt(x2 / x1)])


def _f3(x):
    x1, x2 = x
    return np.array([(x1**3 / x2**3) ** 0.2, (2.0 * x2**2 / x1**2) ** 0.2])


def _f4(x):
    x1, x2, x3, x4 = x
    return np.array(
        [
            (x1**3 * x3 * x4 / x2) ** 0.25,
            (x2**3 * x3 * x4 / x1) ** 0.25,
            (x3**3 * x1 * x2 / x4) ** 0.25,
            (x4**3 * x1 * x2 / x3) ** 0.25,
        ]
    )


def _f5(x):
    s = x.sum()
    return np.sqrt(x**2 / ((s - x) * s))


_UPDATES = {"f1": _f1, "f2": _f2, "f3": _f3, "f4": _f4, "f5": _f5}
CLOSED_FORM_NAMES = tuple(_UPDATES)


def closed_form_updates(name: str, x_m: Sequence[float]) -> np.ndarray:
    """Hand-derived MM update for the small test functions ``f1``..``f5``."""
    try:
        update = _UPDATES[name]
    except KeyError:
        raise KeyError(f"no closed-form update for {name!r}; known: {', '.join(CLOSED_FORM_NAMES)}") from None
    return update(np.asarray(x_m, dtype=float))


def finite_difference_gradient(f: Callable[[np.ndarray], float], x, h: float = 1e-6) -> np.ndarray:
    """Central differences; every ``x_i - h`` must stay positive."""
    x = np.asarray(x, dtype=float)
    if np.any(x - h <= 0):
        raise ValueError("finite-difference stencil leaves the positive orthant")
    g = np.empty_like(x)
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = h
        g[i] = (f(x + e) - f(x - e)) / (2.0 * h)
    return g
