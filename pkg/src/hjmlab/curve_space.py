"""Forward curves as grid samples of a weighted Sobolev-type Hilbert space.

Curves live on [0, xi_max] in time-to-maturity xi, with norm

    ||h|| = ( |h(0)|^2 + int |h'(xi)|^2 w(xi) dxi )^{1/2},   w(xi) = exp(alpha*xi).

Any alpha > 0 gives a nondecreasing weight with w >= 1 and integrable
w^{-1/3}, so the space supports the translation semigroup and the
differentiation generator used by the term-structure dynamics.  All
operators are discretized on the grid: derivatives by central finite
differences, integrals by the trapezoid rule, shifts by resampling.
Beyond xi_max curves extend constantly, so shifted curves stay in the
space with a flat (zero-derivative) tail.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.interpolate import PchipInterpolator

__all__ = [
    "CurveGrid",
    "ForwardCurve",
    "h_norm",
    "inner_product",
    "shift",
    "integrated_vol",
    "derivative",
]

DEFAULT_XI_MAX = 30.0
DEFAULT_N_POINTS = 601
DEFAULT_WEIGHT_ALPHA = 0.1


class InvalidCurveError(ValueError):
    """Raised for non-finite curve data or grid violations."""


@dataclass(frozen=True)
class CurveGrid:
    """Maturity grid with the exponential norm weight.

    nodes must start at 0 and be strictly increasing; weight_alpha > 0.
    """

    xi_max: float
    n_points: int
    nodes: np.ndarray
    weight_alpha: float = DEFAULT_WEIGHT_ALPHA

    def __post_init__(self) -> None:
        nodes = np.asarray(self.nodes, dtype=float)
        nodes.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        if self.n_points != len(nodes):
            raise InvalidCurveError("n_points does not match nodes length")
        if self.n_points < 3:
            raise InvalidCurveError("grid needs at least 3 nodes")
        if nodes[0] != 0.0:
            raise InvalidCurveError("grid must start at xi = 0")
        if not np.all(np.diff(nodes) > 0.0):
            raise InvalidCurveError("grid nodes must be strictly increasing")
        if abs(nodes[-1] - self.xi_max) > 1e-12:
            raise InvalidCurveError("last node must equal xi_max")
        if self.weight_alpha <= 0.0:
            raise InvalidCurveError("weight_alpha must be positive")

    @classmethod
    def uniform(
        cls,
        xi_max: float = DEFAULT_XI_MAX,
        n_points: int = DEFAULT_N_POINTS,
        weight_alpha: float = DEFAULT_WEIGHT_ALPHA,
    ) -> "CurveGrid":
        return cls(xi_max, n_points, np.linspace(0.0, xi_max, n_points), weight_alpha)

    @property
    def dx(self) -> float:
        """Spacing of a uniform grid (raises if non-uniform)."""
        d = np.diff(self.nodes)
        if not np.allclose(d, d[0], rtol=1e-10, atol=0.0):
            raise InvalidCurveError("grid is not uniform")
        return float(d[0])

    @property
    def is_uniform(self) -> bool:
        d = np.diff(self.nodes)
        return bool(np.allclose(d, d[0], rtol=1e-10, atol=0.0))

    def weights(self) -> np.ndarray:
        return np.exp(self.weight_alpha * self.nodes)

    def refined(self, factor: int = 2) -> "CurveGrid":
        """Uniform grid with spacing divided by factor (for refinement studies)."""
        n = (self.n_points - 1) * factor + 1
        return CurveGrid.uniform(self.xi_max, n, self.weight_alpha)


@dataclass(frozen=True)
class ForwardCurve:
    """Grid-sampled forward curve; immutable after construction."""

    grid: CurveGrid
    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        if values.shape != (self.grid.n_points,):
            raise InvalidCurveError("values length must equal grid size")
        if not np.all(np.isfinite(values)):
            raise InvalidCurveError("curve values must be finite")

    @classmethod
    def from_function(cls, grid: CurveGrid, fn: Callable[[np.ndarray], np.ndarray]) -> "ForwardCurve":
        return cls(grid, np.asarray(fn(grid.nodes), dtype=float))

    @classmethod
    def constant(cls, grid: CurveGrid, c: float) -> "ForwardCurve":
        return cls(grid, np.full(grid.n_points, float(c)))

    def short_rate(self) -> float:
        return float(self.values[0])

    def to_csv_rows(self) -> list[str]:
        return [f"{x:.17g},{v:.17g}" for x, v in zip(self.grid.nodes, self.values)]


def derivative(curve: ForwardCurve) -> ForwardCurve:
    """Central finite differences, second-order one-sided at the ends."""
    d = np.gradient(curve.values, curve.grid.nodes, edge_order=2)
    return ForwardCurve(curve.grid, d)


def h_norm(curve: ForwardCurve) -> float:
    """Weighted Sobolev norm via the grid's fixed quadrature."""
    d = np.gradient(curve.values, curve.grid.nodes, edge_order=2)
    integ = np.trapezoid(d * d * curve.grid.weights(), curve.grid.nodes)
    return float(np.sqrt(curve.values[0] ** 2 + integ))


def inner_product(a: ForwardCurve, b: ForwardCurve) -> float:
    """Polarization of the norm; requires a common grid."""
    if a.grid is not b.grid and not (
        a.grid.n_points == b.grid.n_points and np.array_equal(a.grid.nodes, b.grid.nodes)
    ):
        raise InvalidCurveError("inner_product requires curves on the same grid")
    da = np.gradient(a.values, a.grid.nodes, edge_order=2)
    db = np.gradient(b.values, b.grid.nodes, edge_order=2)
    integ = np.trapezoid(da * db * a.grid.weights(), a.grid.nodes)
    return float(a.values[0] * b.values[0] + integ)


def shift(curve: ForwardCurve, t: float) -> ForwardCurve:
    """Translation semigroup (S_t h)(xi) = h(xi + t), constant beyond xi_max.

    On a uniform grid with t an exact multiple of the spacing the shift is
    plain resampling; otherwise monotone cubic interpolation is used.
    """
    if t < 0.0:
        raise ValueError("shift time must be nonnegative")
    if t == 0.0:
        return curve
    grid = curve.grid
    if grid.is_uniform:
        m = t / grid.dx
        m_round = round(m)
        if abs(m - m_round) < 1e-9:
            m_int = int(m_round)
            if m_int >= grid.n_points:
                return ForwardCurve.constant(grid, float(curve.values[-1]))
            out = np.empty_like(curve.values)
            out[: grid.n_points - m_int] = curve.values[m_int:]
            out[grid.n_points - m_int :] = curve.values[-1]
            return ForwardCurve(grid, out)
    interp = PchipInterpolator(grid.nodes, curve.values, extrapolate=False)
    target = np.minimum(grid.nodes + t, grid.xi_max)
    return ForwardCurve(grid, interp(target))


def integrated_vol(vol_curve: ForwardCurve) -> ForwardCurve:
    """Integrated volatility xi -> -int_0^xi vol by cumulative trapezoid."""
    v = vol_curve.values
    nodes = vol_curve.grid.nodes
    steps = 0.5 * (v[1:] + v[:-1]) * np.diff(nodes)
    out = np.concatenate(([0.0], -np.cumsum(steps)))
    return ForwardCurve(vol_curve.grid, out)
