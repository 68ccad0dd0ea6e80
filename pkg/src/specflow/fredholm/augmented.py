"""Discretized augmented operators ``xi -> (d/ds xi + A xi, pi_+ xi(start), pi_- xi(end))``.

Unknowns are the node values ``xi_0, ..., xi_n`` (``N`` coordinates each,
ordered by node).  Rows are, in this order, the start boundary rows, one
implicit-midpoint residual block per grid interval and the end boundary
rows, which keeps the matrix banded with bandwidth below ``2N``.

Residual block ``j`` is ``sqrt(h) * ((xi_{j+1} - xi_j)/h + A(t_{j+1/2})
(xi_j + xi_{j+1})/2)`` so that ``||M xi||`` approximates the ``P_0`` norm of
``D_A xi``.  A boundary row for eigenvector ``v_l`` of the endpoint operator
is ``|a_l|^{1/2} v_l^T G``; the rows of one endpoint therefore measure the
``H_{1/2}`` norm of the projected endpoint value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
import scipy.linalg

from ..errors import EndpointNotInvertible
from ..paths import IntervalKind
from .linalg import svdvals

__all__ = [
    "AugmentedSystem",
    "IndexReport",
    "boundary_rows",
    "assemble_augmented",
    "assemble_adjoint_augmented",
    "numeric_index",
    "resolve_index",
    "system_residual",
    "CokernelComparison",
    "cokernel_vs_adjoint_kernel",
    "split_family_system",
    "split_family_index",
    "RANK_TOL",
    "GAP_MIN",
    "GRID_CAP",
]

RANK_TOL = 1e-8
GAP_MIN = 1e3
GRID_CAP = 2048


def boundary_rows(op, sign):
    """Rows ``|a_l|^{1/2} v_l^T G`` for the eigenvalues of the given sign."""
    op.require_invertible("boundary operator", EndpointNotInvertible)
    sel = op.eigenvalues > 0 if sign == "+" else op.eigenvalues < 0
    v = op.eigenvectors[:, sel]
    w = np.sqrt(np.abs(op.eigenvalues[sel]))
    return (v.T @ op.gram) * w[:, None]


@dataclass(frozen=True, eq=False)
class AugmentedSystem:
    """Assembled block system together with its bookkeeping."""

    matrix: np.ndarray
    N: int
    grid: np.ndarray
    start_rows: int
    end_rows: int
    kind: IntervalKind
    start_block: np.ndarray
    end_block: np.ndarray

    @property
    def n(self):
        return self.grid.size - 1

    @property
    def step(self):
        return (self.grid[-1] - self.grid[0]) / self.n

    @property
    def k_b(self):
        return self.start_rows + self.end_rows

    @property
    def shape(self):
        return self.matrix.shape

    @property
    def shape_index(self):
        """``columns - rows``, which equals ``N - k_b``."""
        rows, cols = self.matrix.shape
        return cols - rows

    @property
    def residual_slice(self):
        return slice(self.start_rows, self.start_rows + self.N * self.n)

    def drop_boundary(self, side):
        """System without the start (``"start"``) or end (``"end"``) boundary rows."""
        if side == "start":
            keep = slice(self.start_rows, None)
            return replace(self, matrix=self.matrix[keep], start_rows=0, start_block=self.start_block[:0])
        if side == "end":
            keep = slice(0, self.matrix.shape[0] - self.end_rows)
            return replace(self, matrix=self.matrix[keep], end_rows=0, end_block=self.end_block[:0])
        raise ValueError("side must be 'start' or 'end'")


def _residual_blocks(matrix_at, grid, N, out, row0, col0=0):
    h = grid[1] - grid[0]
    rh = math.sqrt(h)
    eye = np.eye(N)
    for j in range(grid.size - 1):
        a_mid = matrix_at(0.5 * (grid[j] + grid[j + 1]))
        r = row0 + j * N
        c = col0 + j * N
        out[r : r + N, c : c + N] = rh * (-eye / h + 0.5 * a_mid)
        out[r : r + N, c + N : c + 2 * N] = rh * (eye / h + 0.5 * a_mid)


def assemble_augmented(path, grid_n, shifts=(0.0, 0.0)):
    """Assemble the augmented system of ``path`` on its window.

    Parameters
    ----------
    path : OperatorPath
        Infinite kinds are truncated at their tail radius; the tail side then
        carries the projection of ``A(+-R)`` onto the decaying directions.
    grid_n : int
        Number of grid intervals.
    shifts : tuple of float
        ``(lambda_start, lambda_end)``; boundary projections are taken for
        ``A(start) - lambda_start`` and ``A(end) - lambda_end``.
    """
    if grid_n < 1:
        raise ValueError("grid_n must be positive")
    a, b = path.window
    grid = np.linspace(a, b, grid_n + 1)
    N = path.N
    start = path.operator(a).shifted(shifts[0])
    end = path.operator(b).shifted(shifts[1])
    bs = boundary_rows(start, "+")
    be = boundary_rows(end, "-")
    ks, ke = bs.shape[0], be.shape[0]
    m = np.zeros((ks + N * grid_n + ke, N * (grid_n + 1)))
    m[:ks, :N] = bs
    _residual_blocks(path.matrix, grid, N, m, ks)
    if ke:
        m[-ke:, N * grid_n :] = be
    return AugmentedSystem(m, N, grid, ks, ke, path.kind, bs, be)


def assemble_adjoint_augmented(path, grid_n, shifts=(0.0, 0.0)):
    """Augmented system of the adjoint path ``s -> -A(s)*``."""
    return assemble_augmented(path.adjoint(), grid_n, shifts)


def system_residual(system, xi, eta=None, x=None, y=None):
    """``M xi - (sqrt(h) eta_mid, B_start x, B_end y)`` for node data ``xi``.

    ``eta`` are node values of the right-hand side (midpoint averages are
    used); missing data count as zero.
    """
    vec = np.asarray(xi.values if hasattr(xi, "values") else xi, dtype=float).reshape(-1)
    res = system.matrix @ vec
    N, n = system.N, system.n
    if eta is not None:
        ev = np.asarray(eta.values if hasattr(eta, "values") else eta, dtype=float).reshape(n + 1, N)
        mid = 0.5 * (ev[:-1] + ev[1:])
        res[system.residual_slice] -= math.sqrt(system.step) * mid.reshape(-1)
    if x is not None and system.start_rows:
        res[: system.start_rows] -= system.start_block @ np.asarray(x, dtype=float)
    if y is not None and system.end_rows:
        res[-system.end_rows :] -= system.end_block @ np.asarray(y, dtype=float)
    return res


@dataclass(frozen=True)
class IndexReport:
    dim_ker: int
    dim_coker: int
    index: int
    sv_gap: float
    grid_n: int
    tol: float
    status: str
    rank: int
    rows: int
    cols: int

    @property
    def resolved(self):
        return self.status == "RESOLVED"

    def to_dict(self):
        gap = self.sv_gap if math.isfinite(self.sv_gap) else "inf"
        return {
            "dim_ker": self.dim_ker,
            "dim_coker": self.dim_coker,
            "index": self.index,
            "sv_gap": gap,
            "grid_n": self.grid_n,
            "tol": self.tol,
            "status": self.status,
        }


def _gap(s, rank, tol):
    """Separation between the counted-nonzero and counted-zero singular values.

    Without counted zeros the smallest singular value is compared with the
    rank threshold itself.
    """
    if s.size == 0 or rank == 0:
        return math.inf
    if rank == s.size:
        return float(s[rank - 1] / (tol * s[0]))
    if s[rank] == 0.0:
        return math.inf
    return float(s[rank - 1] / s[rank])


def index_from_singular_values(s, rows, cols, tol=RANK_TOL, grid_n=0):
    s = np.asarray(s, dtype=float)
    smax = s[0] if s.size else 0.0
    rank = int(np.count_nonzero(s > tol * smax)) if smax > 0 else 0
    gap = _gap(s, rank, tol)
    status = "RESOLVED" if gap >= GAP_MIN else "UNRESOLVED"
    dk, dc = cols - rank, rows - rank
    return IndexReport(dk, dc, dk - dc, gap, grid_n, tol, status, rank, rows, cols)


def numeric_index(system, tol=RANK_TOL):
    """Kernel and cokernel dimensions of an assembled system from its singular values."""
    matrix = system.matrix if hasattr(system, "matrix") else np.asarray(system)
    rows, cols = matrix.shape
    grid_n = getattr(system, "n", 0)
    return index_from_singular_values(svdvals(matrix), rows, cols, tol, grid_n)


def resolve_index(path, grid_n=200, tol=RANK_TOL, cap=GRID_CAP, assemble=assemble_augmented, **kw):
    """Numeric index with grid doubling until the singular-value gap is clear.

    Returns the final report and the list of grid sizes tried.
    """
    tried = []
    n = grid_n
    while True:
        report = numeric_index(assemble(path, n, **kw), tol)
        tried.append(n)
        if report.resolved or 2 * n > cap:
            return report, tried
        n *= 2


@dataclass(frozen=True)
class CokernelComparison:
    dim_coker: int
    dim_adjoint_kernel: int
    max_angle: float
    step: float
    status: str

    @property
    def dims_equal(self):
        return self.dim_coker == self.dim_adjoint_kernel


def cokernel_vs_adjoint_kernel(path, grid_n, tol=RANK_TOL):
    """Compare the cokernel of the augmented system with the adjoint kernel.

    The residual part of each left null vector is a grid function on the
    interval midpoints; the adjoint kernel is averaged onto the same
    midpoints and the largest principal angle between the two spans is
    reported.
    """
    sys_a = assemble_augmented(path, grid_n)
    sys_b = assemble_adjoint_augmented(path, grid_n)
    u, s, _ = scipy.linalg.svd(sys_a.matrix, full_matrices=True)
    rep_a = index_from_singular_values(s, *sys_a.shape, tol, grid_n)
    _, s_b, vt_b = scipy.linalg.svd(sys_b.matrix, full_matrices=True)
    rep_b = index_from_singular_values(s_b, *sys_b.shape, tol, grid_n)
    status = "RESOLVED" if rep_a.resolved and rep_b.resolved else "UNRESOLVED"
    k_a, k_b = rep_a.dim_coker, rep_b.dim_ker
    if k_a == 0 or k_b == 0 or k_a != k_b:
        angle = 0.0 if k_a == k_b else math.pi / 2
        return CokernelComparison(k_a, k_b, angle, float(sys_a.step), status)
    left = u[:, rep_a.rank :][sys_a.residual_slice]
    z = vt_b[rep_b.rank :].T.reshape(grid_n + 1, path.N, k_b)
    z_mid = (0.5 * (z[:-1] + z[1:])).reshape(grid_n * path.N, k_b)
    angle = float(np.max(scipy.linalg.subspace_angles(left, z_mid)))
    return CokernelComparison(k_a, k_b, angle, float(sys_a.step), status)


def split_family_system(path, r, grid_n, junction=None):
    """Augmented system on a split interval with coupling parameter ``r``.

    The domain consists of pairs ``(xi, eta)`` on ``[a, m]`` and ``[m, b]``
    with ``pi_-(xi(m)) = r pi_-(eta(m))`` and ``r pi_+(xi(m)) = pi_+(eta(m))``
    for the projections of ``A(m)``.  Returns the matrix restricted to an
    orthonormal basis of that domain.  ``grid_n`` intervals are used on each
    half.
    """
    a, b = path.window
    m = 0.5 * (a + b) if junction is None else float(junction)
    N = path.N
    left, right = np.linspace(a, m, grid_n + 1), np.linspace(m, b, grid_n + 1)
    bs = boundary_rows(path.operator(a), "+")
    be = boundary_rows(path.operator(b), "-")
    ks, ke = bs.shape[0], be.shape[0]
    nl = N * (grid_n + 1)
    rows = ks + 2 * N * grid_n + ke
    mat = np.zeros((rows, 2 * nl))
    mat[:ks, :N] = bs
    _residual_blocks(path.matrix, left, N, mat, ks, 0)
    _residual_blocks(path.matrix, right, N, mat, ks + N * grid_n, nl)
    if ke:
        mat[-ke:, 2 * nl - N :] = be

    mid = path.operator(m).require_invertible("junction operator", EndpointNotInvertible)
    coef = mid.eigenvectors.T @ mid.gram
    neg = mid.eigenvalues < 0
    cons = np.zeros((N, 2 * nl))
    xi_end = slice(nl - N, nl)
    eta_start = slice(nl, nl + N)
    cons[neg, xi_end] = coef[neg]
    cons[neg, eta_start] = -r * coef[neg]
    cons[~neg, xi_end] = r * coef[~neg]
    cons[~neg, eta_start] = -coef[~neg]
    basis = scipy.linalg.null_space(cons)
    return mat @ basis


def split_family_index(path, r, grid_n, tol=RANK_TOL, junction=None):
    mat = split_family_system(path, r, grid_n, junction)
    rows, cols = mat.shape
    return index_from_singular_values(scipy.linalg.svdvals(mat), rows, cols, tol, grid_n)
