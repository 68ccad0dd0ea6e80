"""Grid functions ``xi: {t_0, ..., t_n} -> R^N`` and their path norms."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import DimensionError
from ..scale import GrowthFunction

__all__ = ["DiscretePath", "trapezoid_weights"]


def trapezoid_weights(n_nodes, h):
    w = np.full(n_nodes, h)
    w[0] = w[-1] = 0.5 * h
    return w


@dataclass(frozen=True, eq=False)
class DiscretePath:
    """Values of a path on a uniform grid.

    ``values[j]`` are the scale coordinates at ``grid[j]``.  ``metric`` is
    the Gram matrix of ``H_0`` (identity when omitted).
    """

    grid: np.ndarray
    values: np.ndarray
    gf: GrowthFunction | None = None
    metric: np.ndarray | None = None

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if values.ndim == 1:
            values = values.reshape(-1, 1)
        if values.shape[0] != grid.size:
            raise DimensionError(f"{values.shape[0]} node values for {grid.size} grid points")
        if grid.size < 2:
            raise ValueError("a discrete path needs at least two nodes")
        steps = np.diff(grid)
        if np.any(steps <= 0) or np.ptp(steps) > 1e-9 * max(abs(steps[0]), 1.0):
            raise ValueError("grid must be uniform and increasing")
        gf = self.gf if self.gf is not None else GrowthFunction.ones(values.shape[1])
        if gf.N != values.shape[1]:
            raise DimensionError("growth function size does not match values")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "gf", gf)

    @classmethod
    def from_function(cls, fn, a, b, n, gf=None, metric=None):
        grid = np.linspace(a, b, n + 1)
        return cls(grid, np.array([np.asarray(fn(t), dtype=float).reshape(-1) for t in grid]), gf, metric)

    @classmethod
    def zeros(cls, a, b, n, N, gf=None):
        return cls(np.linspace(a, b, n + 1), np.zeros((n + 1, N)), gf)

    @property
    def N(self):
        return self.values.shape[1]

    @property
    def n(self):
        """Number of grid intervals."""
        return self.grid.size - 1

    @property
    def step(self):
        return (self.grid[-1] - self.grid[0]) / self.n

    def _h0_sq(self, vals):
        if self.metric is None:
            return np.einsum("ij,ij->i", vals, vals)
        return np.einsum("ij,jk,ik->i", vals, self.metric, vals)

    def differences(self):
        """Forward differences ``(xi_{j+1} - xi_j) / h``, one per interval."""
        return np.diff(self.values, axis=0) / self.step

    def p0_norm(self):
        w = trapezoid_weights(self.grid.size, self.step)
        return math.sqrt(math.fsum(w * self._h0_sq(self.values)))

    def h1_sq(self, h1=None):
        """Pointwise squared ``H_1`` norms.

        ``h1`` is ``None`` for the scale weights ``h(nu)``, or a square
        matrix ``A`` for the adapted norm ``||A xi||_0``.
        """
        if h1 is None:
            return self.values**2 @ self.gf.values
        ax = self.values @ np.asarray(h1, dtype=float).T
        return self._h0_sq(ax)

    def p1_norm(self, h1=None):
        """``sqrt(int ||xi'||_0^2 + int ||xi||_1^2)``."""
        h = self.step
        deriv = math.fsum(h * self._h0_sq(self.differences()))
        w = trapezoid_weights(self.grid.size, h)
        return math.sqrt(deriv + math.fsum(w * self.h1_sq(h1)))

    def trace_norm(self):
        """Norm of ``L^2(H_1) \\cap W^{1,2}(H_0)`` including the ``L^2(H_0)`` term."""
        return math.hypot(self.p1_norm(), self.p0_norm())

    def midpoints(self):
        return 0.5 * (self.values[:-1] + self.values[1:])
