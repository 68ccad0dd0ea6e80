"""Seeded random families of paths and operators.

Keyframe paths follow one recipe throughout: ``k`` in ``[2, 5]`` symmetric
keyframes with entries uniform in ``[-2, 2]``; outer keyframes are
resampled until their invertibility margin exceeds ``MIN_MARGIN``.
"""

from __future__ import annotations

import numpy as np

from ..hessian import PairOperator
from ..paths import IntervalKind, keyframe_path

__all__ = [
    "MIN_MARGIN",
    "random_symmetric",
    "random_invertible",
    "random_keyframes",
    "random_keyframe_path",
    "path_document",
    "random_glued_pair",
    "random_metric",
    "random_shift",
]

MIN_MARGIN = 0.1


def random_symmetric(rng, N, scale=2.0):
    m = rng.uniform(-scale, scale, (N, N))
    return np.triu(m) + np.triu(m, 1).T


def random_invertible(rng, N, margin=MIN_MARGIN, gf=None):
    while True:
        m = random_symmetric(rng, N)
        if PairOperator(m, gf).inv_margin > margin:
            return m


def _times(kind, k, T):
    kind = IntervalKind(kind)
    if kind is IntervalKind.FORWARD:
        return np.linspace(0.0, T, k)
    if kind is IntervalKind.BACKWARD:
        return np.linspace(-T, 0.0, k)
    return np.linspace(-T, T, k)


def random_keyframes(rng, N, kind="finite", T=1.0, k=None):
    """Keyframe times and matrices with well-separated endpoint spectra."""
    k = int(rng.integers(2, 6)) if k is None else k
    mats = [random_symmetric(rng, N) for _ in range(k)]
    mats[0] = random_invertible(rng, N)
    mats[-1] = random_invertible(rng, N)
    if IntervalKind(kind) in (IntervalKind.FORWARD, IntervalKind.BACKWARD):
        # the zero-time keyframe is an endpoint too
        z = 0 if IntervalKind(kind) is IntervalKind.FORWARD else k - 1
        mats[z] = random_invertible(rng, N)
    return _times(kind, k, T), mats


def random_keyframe_path(rng, N, kind="finite", T=1.0, gf=None):
    times, mats = random_keyframes(rng, N, kind, T)
    return keyframe_path(times, mats, kind, gf=gf)


def path_document(times, mats, kind="finite"):
    """Scenario ``path`` block for a keyframe path (used to replay failures)."""
    return {
        "family": "keyframes",
        "kind": IntervalKind(kind).value,
        "times": [float(t) for t in times],
        "matrices": [np.asarray(m, dtype=float).tolist() for m in mats],
    }


def random_glued_pair(rng, N, gf=None):
    """Two finite paths on ``[-1, 0]`` and ``[0, 1]`` with a shared invertible junction."""
    junction = random_invertible(rng, N)
    t1, m1 = random_keyframes(rng, N, T=1.0)
    t2, m2 = random_keyframes(rng, N, T=1.0)
    m1[-1] = junction
    m2[0] = junction
    t1 = 0.5 * (t1 - 1.0)
    t2 = 0.5 * (t2 + 1.0)
    return (t1, m1), (t2, m2)


def random_metric(rng, N, spread=0.5):
    """Positive definite Gram matrix with eigenvalues in ``[1 - spread, 1 + spread]``."""
    q, _ = np.linalg.qr(rng.standard_normal((N, N)))
    d = rng.uniform(1.0 - spread, 1.0 + spread, N)
    return (q * d) @ q.T


def random_shift(rng, op, span=1.5, min_gap=0.05):
    """A non-eigenvalue near the spectrum of ``op``, at least ``min_gap`` from it."""
    vals = op.eigenvalues
    lo, hi = vals.min() - span, vals.max() + span
    while True:
        lam = float(rng.uniform(lo, hi))
        if np.min(np.abs(vals - lam)) > min_gap:
            return lam
