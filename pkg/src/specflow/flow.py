"""Spectral flow of Hessian paths.

The spectral flow is computed from endpoint data: with invertible endpoints
the continuous, sorted eigenvalue branches (including the inserted zero
branch) end with the zero in position ``-i`` exactly when
``n_-(A(a)) - n_-(A(b)) = i``.  Grid-sampled branch traces reproduce this
count from sign changes and serve as a diagnostic.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import JunctionNotInvertible, MismatchAtJunction, PathMismatch
from .paths import ENDPOINT_ATOL, IntervalKind, OperatorPath
from .scale import GrowthFunction

__all__ = [
    "spectral_flow",
    "BranchTrace",
    "Crossing",
    "branch_trace",
    "direct_sum",
    "concatenate",
    "DELTA_CROSS",
]

DELTA_CROSS = 1e-6


def spectral_flow(path):
    """Net number of eigenvalues moving from negative to positive.

    Raises
    ------
    EndpointNotInvertible, TailNotSettled
        If the path is not admissible (checked on construction as well).
    """
    path.validate()
    kind = path.kind
    if kind is IntervalKind.BACKWARD:
        # flow of the negative reflected forward path
        return spectral_flow(path.reflected())
    if kind is IntervalKind.LINE:
        path = path.truncated()
    first, last = path.endpoint_operators()
    return first.n_negative - last.n_negative


@dataclass(frozen=True)
class Crossing:
    time: float
    branch: int
    direction: int


@dataclass
class BranchTrace:
    """Sampled eigenvalue branches of a path.

    ``branches[:, k]`` holds branch label ``labels[k]``; label ``0`` starts
    as the inserted zero.  ``eigen[:, i]`` are the plain sorted eigenvalues
    used to detect sign changes.
    """

    grid: np.ndarray
    labels: np.ndarray
    branches: np.ndarray
    eigen: np.ndarray
    crossings: list = field(default_factory=list)
    ambiguous: list = field(default_factory=list)

    @property
    def net_crossings(self):
        return sum(c.direction for c in self.crossings)

    def rows(self):
        for i, t in enumerate(self.grid):
            for k, lab in enumerate(self.labels):
                yield float(t), int(lab), float(self.branches[i, k])

    def write_csv(self, out, crossings_out=None):
        """Write ``time,branch_label,value`` rows and an optional crossings sidecar."""
        with open(out, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["time", "branch_label", "value"])
            for t, lab, v in self.rows():
                w.writerow([repr(t), lab, repr(v)])
        if crossings_out is not None:
            with open(crossings_out, "w", newline="") as fh:
                w = csv.writer(fh)
                w.writerow(["time", "branch", "direction"])
                for c in self.crossings:
                    w.writerow([repr(c.time), c.branch, c.direction])


def branch_trace(path, grid_n):
    """Sample ``grid_n`` equally spaced times of the path window."""
    if grid_n < 2:
        raise ValueError("grid_n must be at least 2")
    a, b = path.window
    grid = np.linspace(a, b, grid_n)
    eigen = np.array([path.operator(t).eigenvalues for t in grid])
    n_start = int(np.count_nonzero(eigen[0] < 0))
    N = path.N
    labels = np.arange(-n_start, N - n_start + 1)
    with_zero = np.sort(np.concatenate([eigen, np.zeros((grid_n, 1))], axis=1), axis=1)

    crossings, ambiguous = [], []
    for i in range(N):
        col = eigen[:, i]
        last = None  # index of the last sample clearly away from zero
        for j, v in enumerate(col):
            if abs(v) <= DELTA_CROSS:
                ambiguous.append((float(grid[j]), i))
                continue
            if last is not None and np.sign(v) != np.sign(col[last]):
                t0, t1, v0, v1 = grid[last], grid[j], col[last], v
                t = t0 + (t1 - t0) * (-v0) / (v1 - v0)
                crossings.append(Crossing(float(t), i, 1 if v > 0 else -1))
            last = j
    crossings.sort(key=lambda c: (c.time, c.branch))
    return BranchTrace(grid, labels, with_zero, eigen, crossings, ambiguous)


def _merged_gf(g1, g2):
    values = np.concatenate([g1.values, g2.values])
    perm = np.argsort(values, kind="stable")
    return GrowthFunction.explicit(values[perm]), perm


def _block(m1, m2, perm, n1, n2):
    if m1 is None and m2 is None:
        return None
    m1 = np.eye(n1) if m1 is None else m1
    m2 = np.eye(n2) if m2 is None else m2
    return scipy.linalg.block_diag(m1, m2)[np.ix_(perm, perm)]


def direct_sum(p1, p2):
    """Block-diagonal path ``A_1 (+) A_2``.

    Coordinates are reordered so the merged growth weights stay monotone;
    this is a relabelling of the basis and leaves spectra untouched.
    """
    if p1.kind is not p2.kind or p1.window != p2.window:
        raise PathMismatch("direct sum needs equal interval kinds and windows")
    gf, perm = _merged_gf(p1.gf, p2.gf)
    f1, f2 = p1.sampler, p2.sampler
    n1, n2 = p1.N, p2.N

    def sampler(s):
        return _block(np.asarray(f1(s), dtype=float), np.asarray(f2(s), dtype=float), perm, n1, n2)

    metric = _block(p1.metric, p2.metric, perm, n1, n2)
    metric_inv = _block(p1.metric_inv, p2.metric_inv, perm, n1, n2)
    kw = dict(gf=gf, metric=metric, metric_inv=metric_inv, family="direct-sum")
    if p1.kind is IntervalKind.FINITE:
        kw["interval"] = p1.interval
    else:
        kw["asymptotes"] = {
            k: _block(p1.asymptotes[k], p2.asymptotes[k], perm, n1, n2) for k in p1.asymptotes
        }
        kw["tail_radius"] = p1.tail_radius
        kw["eps_tail"] = min(p1.eps_tail, p2.eps_tail)
    return OperatorPath(p1.kind, sampler, p1.N + p2.N, **kw)


def concatenate(p_left, p_right):
    """Glue two finite paths sharing the junction ``p_left.window[1] == p_right.window[0]``."""
    if p_left.kind is not IntervalKind.FINITE or p_right.kind is not IntervalKind.FINITE:
        raise PathMismatch("only finite paths are concatenated")
    a, m = p_left.interval
    m2, b = p_right.interval
    if abs(m - m2) > ENDPOINT_ATOL:
        raise PathMismatch(f"left path ends at {m}, right path starts at {m2}")
    if p_left.N != p_right.N:
        raise PathMismatch("paths have different sizes")
    left_end, right_start = p_left.matrix(m), p_right.matrix(m2)
    if np.max(np.abs(left_end - right_start)) > ENDPOINT_ATOL:
        raise MismatchAtJunction("paths disagree at the junction")
    p_left.operator(m).require_invertible("junction operator", JunctionNotInvertible)
    fl, fr = p_left.sampler, p_right.sampler

    def sampler(s):
        return fl(s) if s <= m else fr(s)

    return OperatorPath(
        "finite",
        sampler,
        p_left.N,
        interval=(a, b),
        gf=p_left.gf,
        metric=p_left.metric,
        metric_inv=p_left.metric_inv,
        family="concatenation",
    )
