"""Truncated model Hilbert scales.

A growth function ``h`` with values ``h(1) <= ... <= h(N)`` defines the
weighted sequence spaces ``l^2_{h^r}``; level ``r`` carries the inner
product ``sum_nu h(nu)^r u_nu v_nu``.  Vectors are plain 1-D numpy arrays of
scale-basis coordinates, so the inclusion between levels is the identity on
coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError

__all__ = [
    "GrowthFunction",
    "r_inner",
    "r_norm",
    "shift_isometry",
    "flat_apply",
]


@dataclass(frozen=True, eq=False)
class GrowthFunction:
    """Monotone positive weights ``h(1..N)`` of a truncated scale.

    Use the :meth:`poly`, :meth:`geom` and :meth:`explicit` constructors;
    ``kind`` and ``param`` only record provenance for serialization.
    """

    values: np.ndarray
    kind: str = "explicit"
    param: float | None = None

    def __post_init__(self):
        values = np.array(self.values, dtype=float).reshape(-1)
        if values.size < 1:
            raise ValueError("growth function needs N >= 1")
        if not np.all(np.isfinite(values)) or np.any(values <= 0):
            raise ValueError("growth values must be finite and positive")
        if np.any(np.diff(values) < 0):
            raise ValueError("growth values must be nondecreasing")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def poly(cls, N, p=1.0):
        """``h(nu) = nu**p``."""
        nu = np.arange(1, N + 1, dtype=float)
        return cls(nu**p, kind="poly", param=float(p))

    @classmethod
    def geom(cls, N, base=2.0):
        """``h(nu) = base**nu``."""
        nu = np.arange(1, N + 1, dtype=float)
        return cls(float(base) ** nu, kind="geom", param=float(base))

    @classmethod
    def explicit(cls, values):
        return cls(values, kind="explicit", param=None)

    @classmethod
    def ones(cls, N):
        return cls.explicit(np.ones(N))

    @property
    def N(self):
        return self.values.size

    @property
    def kappa(self):
        """Eigenvalues ``1/h(nu)`` of the compact growth operator."""
        return 1.0 / self.values

    def weights(self, r):
        """Level-``r`` weights ``h(nu)**r``."""
        return self.values**r

    def to_dict(self):
        return {
            "kind": self.kind,
            "param": self.param,
            "N": self.N,
            "values": [float(v) for v in self.values],
        }

    @classmethod
    def from_dict(cls, data):
        kind = data.get("kind", "explicit")
        if kind == "poly":
            return cls.poly(int(data["N"]), float(data.get("param", 1.0)))
        if kind == "geom":
            return cls.geom(int(data["N"]), float(data.get("param", 2.0)))
        if kind == "explicit":
            return cls.explicit(data["values"])
        raise ValueError(f"unknown growth kind {kind!r}")

    def __eq__(self, other):
        if not isinstance(other, GrowthFunction):
            return NotImplemented
        return np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash(self.values.tobytes())


def _check(gf, *vectors):
    out = []
    for v in vectors:
        v = np.asarray(v, dtype=float)
        if v.ndim != 1 or v.size != gf.N:
            raise DimensionError(f"expected vector of length {gf.N}, got shape {v.shape}")
        out.append(v)
    return out


def r_inner(u, v, r, gf):
    """Level-``r`` inner product ``sum h(nu)^r u_nu v_nu`` (compensated sum)."""
    u, v = _check(gf, u, v)
    return math.fsum(gf.weights(r) * (u * v))


def r_norm(u, r, gf):
    return math.sqrt(max(r_inner(u, u, r, gf), 0.0))


def shift_isometry(u, r, s, gf):
    """Map level ``r`` isometrically onto level ``s``.

    Component ``nu`` is multiplied by ``h(nu)^((r - s)/2)``.
    """
    (u,) = _check(gf, u)
    return u * gf.values ** ((r - s) / 2.0)


def flat_apply(u, v):
    """Evaluate the pairing ``(flat u)(v) = <u, v>_0``."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape or u.ndim != 1:
        raise DimensionError(f"shape mismatch {u.shape} vs {v.shape}")
    return math.fsum(u * v)
