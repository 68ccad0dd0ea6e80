"""Continuous paths of Hessians over finite, half-infinite and line intervals.

Infinite intervals are always handled through a finite window: a path of
kind ``forward`` lives on ``[0, inf)`` and is evaluated on ``[0, R]`` where
``R`` is the recorded tail radius beyond which ``A(s)`` stays within
``eps_tail`` of its asymptote.
"""

from __future__ import annotations

import math
from enum import Enum

import numpy as np

from .errors import DimensionError, EndpointNotInvertible, TailNotSettled
from .hessian import PairOperator
from .scale import GrowthFunction

__all__ = [
    "IntervalKind",
    "OperatorPath",
    "keyframe_path",
    "arctan_path",
    "affine_path",
    "poly_path",
    "constant_path",
    "ENDPOINT_ATOL",
]

ENDPOINT_ATOL = 1e-9
# sample points (in units of the tail radius) used to audit the tail
_TAIL_PROBES = (1.0, 1.25, 1.5, 2.0, 3.0, 4.0, 8.0, 16.0)


class IntervalKind(str, Enum):
    FINITE = "finite"
    FORWARD = "forward"
    BACKWARD = "backward"
    LINE = "line"


class OperatorPath:
    """A continuous map ``s -> A(s)`` with declared endpoints or asymptotes.

    Parameters
    ----------
    kind : IntervalKind or str
    sampler : callable
        ``s -> (N, N) ndarray``.
    N : int
    interval : tuple of float, optional
        ``(a, b)`` for finite paths.
    asymptotes : dict, optional
        ``{"+": matrix, "-": matrix}`` limits at ``+inf`` / ``-inf`` as
        required by the kind.
    tail_radius : float, optional
        Radius beyond which the path is within ``eps_tail`` of its asymptotes.
    eps_tail : float, optional
        Defaults to a quarter of the smallest asymptotic invertibility margin.
    gf, metric, metric_inv
        Passed on to every sampled :class:`PairOperator`.
    """

    def __init__(
        self,
        kind,
        sampler,
        N,
        *,
        interval=None,
        asymptotes=None,
        tail_radius=None,
        eps_tail=None,
        gf=None,
        metric=None,
        metric_inv=None,
        family="custom",
        validate=True,
    ):
        self.kind = IntervalKind(kind)
        self._sampler = sampler
        self.N = int(N)
        self.gf = gf if gf is not None else GrowthFunction.poly(self.N)
        if self.gf.N != self.N:
            raise DimensionError("growth function size does not match path size")
        self.metric = None if metric is None else np.asarray(metric, dtype=float)
        if self.metric is not None and metric_inv is None:
            metric_inv = np.linalg.inv(self.metric)
        self.metric_inv = None if metric_inv is None else np.asarray(metric_inv, dtype=float)
        self.family = family
        self.asymptotes = {k: np.asarray(v, dtype=float) for k, v in (asymptotes or {}).items()}

        if self.kind is IntervalKind.FINITE:
            if interval is None:
                raise ValueError("finite paths need an interval")
            a, b = float(interval[0]), float(interval[1])
            if not a < b:
                raise ValueError("interval must satisfy a < b")
            self.interval = (a, b)
            self.tail_radius = None
            self.eps_tail = None
        else:
            self.interval = None
            needed = {"forward": ("+",), "backward": ("-",), "line": ("+", "-")}[self.kind.value]
            missing = [k for k in needed if k not in self.asymptotes]
            if missing:
                raise ValueError(f"{self.kind.value} path needs asymptote(s) {missing}")
            if tail_radius is None or tail_radius < 0:
                raise ValueError("infinite paths need a nonnegative tail_radius")
            self.tail_radius = float(tail_radius)
            margin = min(self.asymptote(k).inv_margin for k in needed)
            self.eps_tail = float(eps_tail) if eps_tail is not None else margin / 4.0
        if validate:
            self.validate()

    # -- evaluation -------------------------------------------------------

    def matrix(self, s):
        m = np.asarray(self._sampler(float(s)), dtype=float)
        if m.shape != (self.N, self.N):
            raise DimensionError(f"sampler returned shape {m.shape}, expected {(self.N, self.N)}")
        return m

    def operator(self, s):
        return self._op(self.matrix(s))

    def _op(self, m):
        return PairOperator(m, self.gf, self.metric, self.metric_inv)

    def asymptote(self, side):
        return self._op(self.asymptotes[side])

    @property
    def window(self):
        """Finite interval on which the path is discretized."""
        k = self.kind
        if k is IntervalKind.FINITE:
            return self.interval
        R = self.tail_radius
        if k is IntervalKind.FORWARD:
            return (0.0, R)
        if k is IntervalKind.BACKWARD:
            return (-R, 0.0)
        return (-R, R)

    def start_operator(self):
        return self.operator(self.window[0])

    def end_operator(self):
        return self.operator(self.window[1])

    def endpoint_operators(self):
        """Operators whose invertibility defines the admissible class.

        ``(A(a), A(b))`` for finite paths, ``(A(0), A^+)`` forward,
        ``(A^-, A(0))`` backward and ``(A^-, A^+)`` on the line.
        """
        k = self.kind
        if k is IntervalKind.FINITE:
            return self.start_operator(), self.end_operator()
        if k is IntervalKind.FORWARD:
            return self.operator(0.0), self.asymptote("+")
        if k is IntervalKind.BACKWARD:
            return self.asymptote("-"), self.operator(0.0)
        return self.asymptote("-"), self.asymptote("+")

    # -- validation -------------------------------------------------------

    def validate(self):
        first, last = self.endpoint_operators()
        first.require_invertible("start operator", EndpointNotInvertible)
        last.require_invertible("end operator", EndpointNotInvertible)
        if self.kind is IntervalKind.FINITE:
            return self
        for side in self._sides():
            A = self.asymptote(side)
            if not self.eps_tail < A.inv_margin / 2.0:
                raise TailNotSettled(
                    f"eps_tail {self.eps_tail:.3e} not below half the margin {A.inv_margin:.3e} of A^{side}"
                )
            sign = 1.0 if side == "+" else -1.0
            for f in _TAIL_PROBES:
                s = sign * max(self.tail_radius, 1e-12) * f
                if f == 1.0:
                    s = sign * self.tail_radius
                dev = np.linalg.norm(self.matrix(s) - self.asymptotes[side], 2)
                if dev > self.eps_tail:
                    raise TailNotSettled(
                        f"||A({s:.4g}) - A^{side}|| = {dev:.3e} exceeds eps_tail {self.eps_tail:.3e}"
                    )
        return self

    def _sides(self):
        return {"forward": ("+",), "backward": ("-",), "line": ("-", "+")}.get(self.kind.value, ())

    # -- derived paths ----------------------------------------------------

    def _derived(self, kind, sampler, **kw):
        kw.setdefault("gf", self.gf)
        kw.setdefault("metric", self.metric)
        kw.setdefault("metric_inv", self.metric_inv)
        kw.setdefault("family", self.family)
        return OperatorPath(kind, sampler, self.N, **kw)

    def restrict(self, a, b):
        """Finite path obtained by restricting to ``[a, b]``."""
        return self._derived(IntervalKind.FINITE, self._sampler, interval=(a, b))

    def truncated(self):
        """Restriction to :attr:`window`."""
        return self.restrict(*self.window)

    def with_tail_radius(self, radius):
        if self.kind is IntervalKind.FINITE:
            raise ValueError("finite paths have no tail")
        return self._derived(
            self.kind,
            self._sampler,
            asymptotes=self.asymptotes,
            tail_radius=radius,
            eps_tail=self.eps_tail,
        )

    def reflected(self):
        """Forward path ``s -> -A(-s)`` attached to a backward path."""
        if self.kind is not IntervalKind.BACKWARD:
            raise ValueError("only backward paths are reflected")
        f = self._sampler
        return self._derived(
            IntervalKind.FORWARD,
            lambda s: -np.asarray(f(-s), dtype=float),
            asymptotes={"+": -self.asymptotes["-"]},
            tail_radius=self.tail_radius,
            eps_tail=self.eps_tail,
        )

    def adjoint(self):
        """The path ``s -> -A(s)*`` in adjoint coordinates."""
        f = self._sampler
        kw = dict(metric=self.metric_inv, metric_inv=self.metric)
        if self.kind is IntervalKind.FINITE:
            kw["interval"] = self.interval
        else:
            kw.update(
                asymptotes={k: -v.T for k, v in self.asymptotes.items()},
                tail_radius=self.tail_radius,
                eps_tail=self.eps_tail,
            )
        return self._derived(self.kind, lambda s: -np.asarray(f(s), dtype=float).T, **kw)

    @property
    def sampler(self):
        return self._sampler

    def __repr__(self):
        return f"OperatorPath(kind={self.kind.value}, N={self.N}, window={self.window}, family={self.family})"


# -- families -------------------------------------------------------------


def _as_matrices(mats, N=None):
    out = [np.atleast_2d(np.asarray(m, dtype=float)) for m in mats]
    n = out[0].shape[0]
    for m in out:
        if m.shape != (n, n):
            raise DimensionError("all matrices must share one square shape")
    if N is not None and n != N:
        raise DimensionError(f"matrices have size {n}, expected {N}")
    return out


def keyframe_path(times, matrices, kind="finite", **kw):
    """Piecewise-linear interpolation of keyframe matrices.

    For infinite kinds the path is constant beyond the outermost keyframes,
    so the asymptotes are the outer keyframes and the tail radius is exact.
    Forward paths must start at time 0, backward paths end at 0.
    """
    t = np.asarray(times, dtype=float)
    mats = np.stack(_as_matrices(matrices))
    if t.ndim != 1 or t.size != mats.shape[0] or t.size < 2:
        raise ValueError("need at least two keyframe times matching the matrices")
    if np.any(np.diff(t) <= 0):
        raise ValueError("keyframe times must increase strictly")
    N = mats.shape[1]

    def sampler(s):
        if s <= t[0]:
            return mats[0]
        if s >= t[-1]:
            return mats[-1]
        j = int(np.searchsorted(t, s, side="right")) - 1
        w = (s - t[j]) / (t[j + 1] - t[j])
        return (1.0 - w) * mats[j] + w * mats[j + 1]

    kind = IntervalKind(kind)
    kw.setdefault("family", "keyframes")
    if kind is IntervalKind.FINITE:
        return OperatorPath(kind, sampler, N, interval=(t[0], t[-1]), **kw)
    if kind is IntervalKind.FORWARD:
        if t[0] != 0.0:
            raise ValueError("forward keyframes must start at time 0")
        return OperatorPath(kind, sampler, N, asymptotes={"+": mats[-1]}, tail_radius=t[-1], **kw)
    if kind is IntervalKind.BACKWARD:
        if t[-1] != 0.0:
            raise ValueError("backward keyframes must end at time 0")
        return OperatorPath(kind, sampler, N, asymptotes={"-": mats[0]}, tail_radius=-t[0], **kw)
    radius = max(abs(t[0]), abs(t[-1]))
    return OperatorPath(kind, sampler, N, asymptotes={"-": mats[0], "+": mats[-1]}, tail_radius=radius, **kw)


def arctan_path(scale, offset=None, kind="finite", T=1.0, eps_tail=None, **kw):
    """``A(s) = offset + arctan(s) * scale``.

    With ``scale = [[1]]`` and no offset this is the one-dimensional path
    whose spectral flow is normalized to one.
    """
    (S,) = _as_matrices([scale])
    N = S.shape[0]
    C = np.zeros_like(S) if offset is None else _as_matrices([offset], N)[0]

    def sampler(s):
        return C + math.atan(s) * S

    kind = IntervalKind(kind)
    kw.setdefault("family", "arctan")
    if kind is IntervalKind.FINITE:
        return OperatorPath(kind, sampler, N, interval=(-T, T), **kw)
    plus, minus = C + 0.5 * math.pi * S, C - 0.5 * math.pi * S
    asym = {"forward": {"+": plus}, "backward": {"-": minus}, "line": {"+": plus, "-": minus}}[kind.value]
    probe = OperatorPath(
        kind, sampler, N, asymptotes=asym, tail_radius=0.0, eps_tail=eps_tail, validate=False, **kw
    )
    eps = probe.eps_tail
    snorm = np.linalg.norm(S, 2)
    # ||A(s) - A^+|| = ||S|| (pi/2 - arctan s) is decreasing in s
    ratio = eps / snorm if snorm > 0 else math.inf
    radius = 0.0 if ratio >= 0.5 * math.pi else math.tan(0.5 * math.pi - ratio)
    radius = max(radius, T if kind is IntervalKind.LINE else 0.0) * (1.0 + 1e-9)
    return OperatorPath(kind, sampler, N, asymptotes=asym, tail_radius=radius, eps_tail=eps, **kw)


def affine_path(constant, slope, T=1.0, **kw):
    """``A(s) = constant + s * slope`` on ``[-T, T]``."""
    C, S = _as_matrices([constant, slope])
    kw.setdefault("family", "affine")
    return OperatorPath("finite", lambda s: C + s * S, C.shape[0], interval=(-T, T), **kw)


def poly_path(coefficients, T=1.0, **kw):
    """``A(s) = sum_k s**k * coefficients[k]`` on ``[-T, T]``."""
    mats = _as_matrices(coefficients)

    def sampler(s):
        out = np.zeros_like(mats[0])
        for m in reversed(mats):
            out = out * s + m
        return out

    kw.setdefault("family", "custom-poly")
    return OperatorPath("finite", sampler, mats[0].shape[0], interval=(-T, T), **kw)


def constant_path(matrix, T=1.0, kind="finite", **kw):
    (M,) = _as_matrices([matrix])
    kind = IntervalKind(kind)
    kw.setdefault("family", "constant")
    if kind is IntervalKind.FINITE:
        return OperatorPath(kind, lambda s: M, M.shape[0], interval=(-T, T), **kw)
    asym = {"forward": {"+": M}, "backward": {"-": M}, "line": {"+": M, "-": M}}[kind.value]
    return OperatorPath(kind, lambda s: M, M.shape[0], asymptotes=asym, tail_radius=T, **kw)
