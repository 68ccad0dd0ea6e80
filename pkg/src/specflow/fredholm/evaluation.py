"""Endpoint evaluation ``P_1 -> H_{1/2}`` and its exponential right inverse."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import DimensionError
from ..scale import GrowthFunction, r_norm
from .discrete import DiscretePath

__all__ = ["Evaluation", "evaluation_map", "ev_section", "trace_tolerance", "SQRT2"]

SQRT2 = math.sqrt(2.0)


def trace_tolerance(step, gf):
    """Discretization allowance ``10 h_t max(1, sqrt(h(N)))`` on the trace ratio."""
    return 10.0 * step * max(1.0, math.sqrt(gf.values[-1]))


@dataclass(frozen=True)
class Evaluation:
    endpoint: np.ndarray
    half_norm: float
    path_norm: float
    ratio: float
    bound: float
    other_endpoint: np.ndarray

    @property
    def ok(self):
        return self.ratio <= self.bound

    @property
    def pair(self):
        return self.endpoint, self.other_endpoint


def evaluation_map(xi, gf=None):
    """Evaluate ``xi`` at its first node.

    The path norm is that of ``L^2(H_1) \\cap W^{1,2}(H_0)``.  ``bound`` is
    ``sqrt(2)`` plus :func:`trace_tolerance` for the grid of ``xi``.
    """
    gf = xi.gf if gf is None else gf
    if gf.N != xi.N:
        raise DimensionError("growth function size does not match the path")
    path = xi if gf is xi.gf else DiscretePath(xi.grid, xi.values, gf, xi.metric)
    x0 = path.values[0].copy()
    half = r_norm(x0, 0.5, gf)
    norm = path.trace_norm()
    ratio = half / norm if norm > 0 else 0.0
    return Evaluation(x0, half, norm, ratio, SQRT2 + trace_tolerance(path.step, gf), path.values[-1].copy())


def ev_section(x0, gf=None, grid_n=200):
    """The path ``x_nu(s) = exp(-sqrt(h(nu)) s) x0_nu`` on ``[0, 1]``."""
    x0 = np.asarray(x0, dtype=float).reshape(-1)
    gf = GrowthFunction.poly(x0.size) if gf is None else gf
    if gf.N != x0.size:
        raise DimensionError("growth function size does not match x0")
    grid = np.linspace(0.0, 1.0, grid_n + 1)
    values = np.exp(-np.outer(grid, np.sqrt(gf.values))) * x0
    values[0] = x0
    return DiscretePath(grid, values, gf)
