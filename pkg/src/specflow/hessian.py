"""Self-adjoint pair operators in scale-basis coordinates.

A :class:`PairOperator` stores the coordinate matrix of a Hessian
``H_1 -> H_0``.  By default ``H_0`` carries the plain coordinate inner
product and the matrix must be symmetric.  Symmetrizable operators are
supported through an optional positive definite ``metric`` ``G`` (the Gram
matrix of an equivalent ``H_0`` inner product); the matrix must then satisfy
``G @ A == (G @ A).T``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.linalg

from .errors import DimensionError, NotInvertible, ShiftOnSpectrum, WindowTooTight
from .scale import GrowthFunction

__all__ = [
    "PairOperator",
    "Spectrum",
    "SpectralProjection",
    "AdaptedInnerProduct",
    "spectrum",
    "adapted_inner",
    "spectral_projection",
    "spectral_content",
    "resolvent_shift",
    "adjoint_view",
    "SYMMETRY_RTOL",
    "INVERTIBILITY_RTOL",
]

SYMMETRY_RTOL = 1e-10
INVERTIBILITY_RTOL = 1e-8


class PairOperator:
    """Hessian ``H_1 -> H_0`` given by an ``N x N`` coordinate matrix.

    Parameters
    ----------
    entries : array_like
        Coordinate matrix.  Without a metric it is symmetrized exactly after
        the symmetry check, so ``adjoint_view(A)`` reproduces it bit for bit.
    gf : GrowthFunction, optional
        Scale the operator lives on.  Defaults to ``h(nu) = nu``.
    metric, metric_inv : array_like, optional
        Gram matrix of the ``H_0`` inner product and its inverse.  Passing
        both keeps ``adjoint_view`` an exact involution.
    """

    def __init__(self, entries, gf=None, metric=None, metric_inv=None):
        a = np.array(entries, dtype=float)
        if a.ndim == 0:
            a = a.reshape(1, 1)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DimensionError(f"operator must be square, got shape {a.shape}")
        n = a.shape[0]
        if gf is None:
            gf = GrowthFunction.poly(n)
        if gf.N != n:
            raise DimensionError(f"operator of size {n} on a scale of size {gf.N}")
        scale = max(np.max(np.abs(a)), np.finfo(float).tiny)
        if metric is None:
            if np.max(np.abs(a - a.T)) > SYMMETRY_RTOL * scale:
                raise ValueError("operator is not H_0-symmetric")
            a = 0.5 * (a + a.T)
            metric_inv = None
        else:
            metric = np.array(metric, dtype=float)
            if metric.shape != a.shape:
                raise DimensionError("metric shape does not match operator")
            if metric_inv is None:
                metric_inv = np.linalg.inv(metric)
            metric_inv = np.array(metric_inv, dtype=float)
            ga = metric @ a
            if np.max(np.abs(ga - ga.T)) > SYMMETRY_RTOL * max(np.max(np.abs(ga)), 1e-300):
                raise ValueError("operator is not symmetric with respect to the metric")
            metric.setflags(write=False)
            metric_inv.setflags(write=False)
        a.setflags(write=False)
        self._entries = a
        self.gf = gf
        self.metric = metric
        self.metric_inv = metric_inv

    # -- basic data -------------------------------------------------------

    @property
    def entries(self):
        return self._entries

    @property
    def N(self):
        return self._entries.shape[0]

    @property
    def gram(self):
        """Gram matrix of the ``H_0`` inner product."""
        return np.eye(self.N) if self.metric is None else self.metric

    def inner0(self, x, y):
        return float(np.asarray(x) @ self.gram @ np.asarray(y))

    @cached_property
    def _eig(self):
        if self.metric is None:
            w, v = np.linalg.eigh(self._entries)
            return w, v
        # G = L L^T; L^T A L^{-T} is symmetric and shares the spectrum
        low = np.linalg.cholesky(self.metric)
        sym = low.T @ scipy.linalg.solve_triangular(low, self._entries.T, lower=True).T
        sym = 0.5 * (sym + sym.T)
        w, u = np.linalg.eigh(sym)
        v = scipy.linalg.solve_triangular(low.T, u, lower=False)
        return w, v

    @property
    def eigenvalues(self):
        """Eigenvalues in ascending order, repeated with multiplicity."""
        return self._eig[0]

    @property
    def eigenvectors(self):
        """``H_0``-orthonormal eigenvectors as columns, matching :attr:`eigenvalues`."""
        return self._eig[1]

    def coefficients(self, x):
        """Coordinates of ``x`` in the eigenbasis (``V^T G x``)."""
        return self.eigenvectors.T @ (self.gram @ np.asarray(x, dtype=float))

    @property
    def spectral_radius(self):
        return float(np.max(np.abs(self.eigenvalues)))

    @property
    def inv_margin(self):
        return float(np.min(np.abs(self.eigenvalues)))

    @property
    def delta_inv(self):
        return INVERTIBILITY_RTOL * max(1.0, self.spectral_radius)

    @property
    def is_invertible(self):
        return self.inv_margin > self.delta_inv

    @property
    def n_negative(self):
        return int(np.count_nonzero(self.eigenvalues < 0))

    @property
    def n_positive(self):
        return int(np.count_nonzero(self.eigenvalues > 0))

    def require_invertible(self, what="operator", exc=NotInvertible):
        if not self.is_invertible:
            raise exc(f"{what} has inv_margin {self.inv_margin:.3e} <= {self.delta_inv:.3e}")
        return self

    # -- derived operators ------------------------------------------------

    def _like(self, entries):
        return PairOperator(entries, self.gf, self.metric, self.metric_inv)

    def shifted(self, lam):
        """``A - lam * iota``."""
        return self._like(self._entries - lam * np.eye(self.N))

    def __neg__(self):
        return self._like(-self._entries)

    def __repr__(self):
        return f"PairOperator(N={self.N}, eigenvalues={np.array2string(self.eigenvalues, precision=4)})"


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues with their signed labels.

    Negative eigenvalues are labelled ``-1, -2, ...`` moving away from zero,
    non-negative ones ``1, 2, ...``.
    """

    values: np.ndarray
    labels: tuple
    morse_index: int
    comorse_index: int
    kind: str

    def by_label(self):
        return dict(zip(self.labels, (float(v) for v in self.values)))


def spectrum(A):
    vals = A.eigenvalues
    n_neg = int(np.count_nonzero(vals < 0))
    labels = tuple(list(range(-n_neg, 0)) + list(range(1, vals.size - n_neg + 1)))
    n_pos = vals.size - n_neg
    # diagnostic only: at finite N every operator has finitely many of both
    if n_neg < n_pos:
        kind = "Morse"
    elif n_pos < n_neg:
        kind = "co-Morse"
    else:
        kind = "Floer"
    return Spectrum(vals.copy(), labels, n_neg, n_pos, kind)


@dataclass(frozen=True)
class AdaptedInnerProduct:
    """The ``1'`` and ``1/2'`` inner products induced by an invertible Hessian.

    ``<x, y>_{1'} = <A x, A y>_0`` and ``<x, y>_{1/2'} = sum |a_l| c_l(x) c_l(y)``
    with ``c_l`` the eigen-coefficients.
    """

    operator: PairOperator
    gram1: np.ndarray
    gram_half: np.ndarray

    def inner(self, x, y, level=1.0):
        g = self._gram(level)
        return float(np.asarray(x) @ g @ np.asarray(y))

    def norm(self, x, level=1.0):
        return math.sqrt(max(self.inner(x, x, level), 0.0))

    def _gram(self, level):
        if level == 1:
            return self.gram1
        if level == 0.5:
            return self.gram_half
        if level == 0:
            return self.operator.gram
        raise ValueError("adapted levels are 0, 1/2 and 1")

    def eigenvector_defects(self):
        """Largest deviation of ``||v_l||_{1'}`` from ``|a_l|`` and of
        ``||v_l||_{1/2'}`` from ``|a_l|^(1/2)``."""
        A = self.operator
        a = np.abs(A.eigenvalues)
        v = A.eigenvectors
        n1 = np.sqrt(np.einsum("ij,ik,kj->j", v, self.gram1, v))
        nh = np.sqrt(np.einsum("ij,ik,kj->j", v, self.gram_half, v))
        return float(np.max(np.abs(n1 - a))), float(np.max(np.abs(nh - np.sqrt(a))))


def adapted_inner(A):
    A.require_invertible()
    g = A.gram
    gram1 = A.entries.T @ g @ A.entries
    gv = g @ A.eigenvectors
    gram_half = (gv * np.abs(A.eigenvalues)) @ gv.T
    return AdaptedInnerProduct(A, 0.5 * (gram1 + gram1.T), 0.5 * (gram_half + gram_half.T))


@dataclass(frozen=True)
class SpectralProjection:
    sign: str
    basis_columns: np.ndarray
    matrix: np.ndarray

    @property
    def rank(self):
        return self.basis_columns.shape[1]


def _positive_projector(A):
    v = A.eigenvectors[:, A.eigenvalues > 0]
    return v, v @ (v.T @ A.gram)


def spectral_projection(A, sign):
    """Projection onto the positive (``"+"``) or negative (``"-"``) eigenspaces.

    The negative projection is assembled as ``Id - pi_+`` so the two sum to
    the identity exactly.
    """
    A.require_invertible()
    if sign not in ("+", "-"):
        raise ValueError("sign must be '+' or '-'")
    vp, pp = _positive_projector(A)
    if sign == "+":
        return SpectralProjection("+", vp, pp)
    vm = A.eigenvectors[:, A.eigenvalues < 0]
    return SpectralProjection("-", vm, np.eye(A.N) - pp)


def _resolvent_distance(A, lam):
    return float(np.min(np.abs(A.eigenvalues - lam)))


def spectral_content(A, lam, mu):
    """Signed number of eigenvalues strictly between ``lam`` and ``mu``."""
    for x in (lam, mu):
        if _resolvent_distance(A, x) <= A.delta_inv:
            raise ShiftOnSpectrum(f"{x!r} is within {A.delta_inv:.1e} of the spectrum")
    if lam == mu:
        return 0
    lo, hi = min(lam, mu), max(lam, mu)
    count = int(np.count_nonzero((A.eigenvalues > lo) & (A.eigenvalues < hi)))
    return count if lam <= mu else -count


def resolvent_shift(A, window):
    """Point of ``window`` farthest from the spectrum.

    Candidates are the window ends and the midpoints of spectral gaps inside
    the window.  Ties (to relative 1e-12) prefer gap midpoints, then the
    smallest point.
    """
    lo, hi = float(window[0]), float(window[1])
    if not lo <= hi:
        raise ValueError("empty window")
    vals = A.eigenvalues
    mids = 0.5 * (vals[:-1] + vals[1:])
    candidates = [(c, 0) for c in sorted({float(m) for m in mids if lo <= m <= hi})]
    candidates += [(c, 1) for c in sorted({lo, hi})]
    dists = [_resolvent_distance(A, c) for c, _ in candidates]
    best_d = max(dists)
    tied = [(kind, c) for (c, kind), d in zip(candidates, dists) if d >= best_d * (1 - 1e-12)]
    best = min(tied)[1]
    if best_d < A.delta_inv:
        raise WindowTooTight(f"best margin {best_d:.3e} in [{lo}, {hi}]")
    return best


def adjoint_view(A):
    """Coordinate representation of the Banach adjoint ``A*``.

    The adjoint of a ``G``-symmetric matrix is its transpose, symmetric for
    ``G^{-1}``; applying the view twice gives back the original operator.
    """
    if A.metric is None:
        return PairOperator(A.entries.T, A.gf)
    return PairOperator(A.entries.T, A.gf, A.metric_inv, A.metric)
