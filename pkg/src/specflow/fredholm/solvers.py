"""Explicit solutions, perturbation bounds and empirical estimate constants."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import DimensionError, PerturbationTooLarge
from ..scale import r_norm
from .discrete import DiscretePath, trapezoid_weights

__all__ = [
    "constant_path_solve",
    "NeumannResult",
    "neumann_invert",
    "EstimateSample",
    "estimate_sample",
    "random_grid_path",
]


def constant_path_solve(A, T, eta, x=None, y=None):
    """Solve ``xi' + A xi = eta`` on ``[-T, T]`` with mixed boundary data.

    Each eigenmode is solved by variation of constants: positive modes take
    their initial value from ``x`` at ``-T`` and integrate forward, negative
    modes take their final value from ``y`` at ``T`` and integrate backward.
    The convolution integrals use the trapezoid rule in recursive form, so
    every step only multiplies by a decaying exponential.

    Parameters
    ----------
    A : PairOperator
        Invertible constant operator.
    T : float
    eta : DiscretePath
        Right-hand side sampled on a uniform grid of ``[-T, T]``.
    x, y : array_like, optional
        Boundary data; only their positive (``x``) and negative (``y``)
        spectral parts enter.
    """
    A.require_invertible()
    grid = eta.grid
    if abs(grid[0] + T) > 1e-12 * max(1.0, T) or abs(grid[-1] - T) > 1e-12 * max(1.0, T):
        raise ValueError("eta must be sampled on [-T, T]")
    if eta.N != A.N:
        raise DimensionError("eta and A have different sizes")
    N, n, h = A.N, eta.n, eta.step
    a = A.eigenvalues
    coef_eta = eta.values @ (A.gram @ A.eigenvectors)  # (n+1, N) eigen-coefficients
    cx = A.coefficients(np.zeros(N) if x is None else x)
    cy = A.coefficients(np.zeros(N) if y is None else y)
    out = np.zeros((n + 1, N))
    for l in range(N):
        al, e = a[l], coef_eta[:, l]
        if al > 0:
            decay = math.exp(-al * h)
            out[0, l] = cx[l]
            integral = 0.0
            for j in range(n):
                integral = decay * integral + 0.5 * h * (e[j] * decay + e[j + 1])
                out[j + 1, l] = cx[l] * math.exp(-al * (T + grid[j + 1])) + integral
        else:
            decay = math.exp(al * h)
            out[n, l] = cy[l]
            integral = 0.0
            for j in range(n - 1, -1, -1):
                integral = decay * integral + 0.5 * h * (e[j] + e[j + 1] * decay)
                out[j, l] = cy[l] * math.exp(al * (T - grid[j])) - integral
    values = out @ A.eigenvectors.T
    return DiscretePath(grid, values, A.gf, A.metric)


@dataclass(frozen=True)
class NeumannResult:
    inverse: np.ndarray
    bound: float
    norm_inverse: float
    product: float
    terms: int

    @property
    def holds(self):
        return self.norm_inverse <= self.bound * (1.0 + 1e-10)


def neumann_invert(Tm, Pm):
    """Invert ``Tm + Pm`` by a Neumann series around ``Tm``.

    With ``S = -Tm^{-1} Pm`` the inverse is ``(sum_k S^k) Tm^{-1}``; the
    series is accumulated as ``prod_k (I + S^(2^k))`` which doubles the
    number of summed powers at each factor.

    Raises
    ------
    PerturbationTooLarge
        If ``||Tm^{-1}|| * ||Pm|| >= 1`` in the operator 2-norm.
    """
    Tm = np.asarray(Tm, dtype=float)
    Pm = np.asarray(Pm, dtype=float)
    if Tm.shape != Pm.shape or Tm.ndim != 2 or Tm.shape[0] != Tm.shape[1]:
        raise DimensionError("Tm and Pm must be square of equal size")
    t_inv = np.linalg.inv(Tm)
    nt = np.linalg.norm(t_inv, 2)
    product = nt * np.linalg.norm(Pm, 2)
    if not product < 1.0:
        raise PerturbationTooLarge(f"||T^-1|| ||P|| = {product:.6g} >= 1")
    bound = nt / (1.0 - product)
    S = -t_inv @ Pm
    eye = np.eye(Tm.shape[0])
    total = eye + S
    power = S
    terms = 2
    snorm = np.linalg.norm(S, 2)
    # the tail after 2^k terms is bounded by snorm^(2^k) / (1 - snorm)
    while snorm**terms / (1.0 - snorm) > 1e-17 and terms < 2**40:
        power = power @ power
        total = total + total @ power
        terms *= 2
    inverse = total @ t_inv
    return NeumannResult(inverse, float(bound), float(np.linalg.norm(inverse, 2)), float(product), terms)


def random_grid_path(rng, a, b, n, N, gf=None):
    """Standard normal node values smoothed by one midpoint-averaging pass."""
    raw = rng.standard_normal((n + 2, N))
    return DiscretePath(np.linspace(a, b, n + 1), 0.5 * (raw[:-1] + raw[1:]), gf)


@dataclass(frozen=True)
class EstimateSample:
    constant: float
    ratios: np.ndarray
    grid_n: int

    def __float__(self):
        return self.constant


def _estimate_ratio(path, xi, a_mid, proj_start, proj_end):
    gf = path.gf
    h = xi.step
    d = xi.differences() + 0.5 * np.einsum("jkl,jl->jk", a_mid, xi.values[:-1] + xi.values[1:])
    d_norm = math.sqrt(math.fsum(h * np.einsum("ij,ij->i", d, d)))
    w = trapezoid_weights(xi.grid.size, h)
    p0 = math.sqrt(math.fsum(w * np.einsum("ij,ij->i", xi.values, xi.values)))
    bs = r_norm(proj_start @ xi.values[0], 0.5, gf)
    be = r_norm(proj_end @ xi.values[-1], 0.5, gf)
    return xi.p1_norm() / (p0 + d_norm + bs + be)


def estimate_sample(path, trials, grid_n=200, seed=0, include_constant=True):
    """Largest observed ratio ``||xi||_{P_1} / (||xi||_{P_0} + ||D_A xi||_{P_0} + boundary terms)``.

    The boundary terms are the ``H_{1/2}`` scale norms of the spectral
    projections of ``xi`` at the two ends of the path window.  Sampled paths
    are smoothed Gaussian node values; with ``include_constant`` the first
    trial is a path constant in time.
    """
    from ..hessian import spectral_projection

    rng = np.random.default_rng(seed)
    a, b = path.window
    grid = np.linspace(a, b, grid_n + 1)
    a_mid = np.array([path.matrix(0.5 * (grid[j] + grid[j + 1])) for j in range(grid_n)])
    p_start = spectral_projection(path.operator(a), "+").matrix
    p_end = spectral_projection(path.operator(b), "-").matrix
    ratios = []
    for t in range(trials):
        if include_constant and t == 0:
            v = rng.standard_normal(path.N)
            xi = DiscretePath(grid, np.tile(v, (grid_n + 1, 1)), path.gf)
        else:
            xi = random_grid_path(rng, a, b, grid_n, path.N, path.gf)
        ratios.append(_estimate_ratio(path, xi, a_mid, p_start, p_end))
    ratios = np.array(ratios)
    return EstimateSample(float(ratios.max()), ratios, grid_n)

