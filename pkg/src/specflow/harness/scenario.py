"""Scenario documents (schema ``specflow.scenario/1``).

A scenario names one path (or a fuzz recipe generating many), a growth
function, numerical settings and the list of checks to run::

    {
      "schema": "specflow.scenario/1",
      "id": "normalization",
      "growth": {"kind": "poly", "param": 1},
      "path": {"family": "arctan", "kind": "finite", "scale": [[1]], "T": 1},
      "grid_n": 200,
      "tol": 1e-8,
      "checks": ["index_theorem"],
      "seed": 0
    }

Path families: ``keyframes`` (``times``, ``matrices``), ``arctan``
(``scale``, optional ``offset``, ``T``, ``eps_tail``), ``affine``
(``constant``, ``slope``, ``T``), ``custom-poly`` (``coefficients``, ``T``)
and ``constant`` (``matrix``, ``T``).  ``kind`` is one of ``finite``,
``forward``, ``backward``, ``line``; ``metric`` optionally gives the Gram
matrix of ``H_0``.  Instead of ``path`` a ``fuzz`` block
``{"count": int, "N": int, "kind": str}`` draws random keyframe paths
from the seed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import SpecflowError, ValidationError
from ..paths import IntervalKind, affine_path, arctan_path, constant_path, keyframe_path, poly_path
from ..scale import GrowthFunction

__all__ = ["SCHEMA_ID", "CHECKS", "Scenario", "load_scenario", "parse_scenario", "build_growth", "build_path"]

SCHEMA_ID = "specflow.scenario/1"
CHECKS = (
    "index_theorem",
    "axioms",
    "concatenation",
    "adjoint",
    "shift_lemma",
    "homotopy",
    "cokernel",
    "trace_bounds",
    "neumann",
    "constant_solver",
)
FAMILIES = ("keyframes", "arctan", "affine", "custom-poly", "constant")
_SEED_MAX = 2**64


@dataclass(frozen=True)
class Scenario:
    id: str
    growth: dict
    path: dict | None
    grid_n: int = 200
    tol: float = 1e-8
    checks: tuple = ("index_theorem",)
    seed: int = 0
    fuzz: dict | None = None
    options: dict = field(default_factory=dict)

    def to_dict(self):
        out = {
            "schema": SCHEMA_ID,
            "id": self.id,
            "growth": self.growth,
            "grid_n": self.grid_n,
            "tol": self.tol,
            "checks": list(self.checks),
            "seed": self.seed,
        }
        if self.path is not None:
            out["path"] = self.path
        if self.fuzz is not None:
            out["fuzz"] = self.fuzz
        if self.options:
            out["options"] = self.options
        return out

    @property
    def N(self):
        if self.fuzz is not None:
            return int(self.fuzz["N"])
        return _path_size(self.path)

    def gf(self, N=None):
        return build_growth(self.growth, self.N if N is None else N)

    def build_path(self):
        if self.path is None:
            raise ValidationError("path", "scenario has no explicit path")
        return build_path(self.path, self.gf())


def _require(cond, fld, msg):
    if not cond:
        raise ValidationError(fld, msg)


def _matrix(value, fld, N=None):
    try:
        m = np.array(value, dtype=float)
    except (TypeError, ValueError):
        raise ValidationError(fld, "not a numeric matrix") from None
    if m.ndim == 0:
        m = m.reshape(1, 1)
    _require(m.ndim == 2 and m.shape[0] == m.shape[1], fld, f"expected a square matrix, got shape {m.shape}")
    _require(np.all(np.isfinite(m)), fld, "entries must be finite")
    if N is not None:
        _require(m.shape[0] == N, fld, f"expected size {N}, got {m.shape[0]}")
    return m


def _number(doc, key, fld, default=None, positive=False):
    if key not in doc:
        _require(default is not None, fld, "missing")
        return default
    v = doc[key]
    _require(isinstance(v, (int, float)) and not isinstance(v, bool), fld, "must be a number")
    _require(math.isfinite(v), fld, "must be finite")
    if positive:
        _require(v > 0, fld, "must be positive")
    return float(v)


def _path_size(doc):
    fam = doc["family"]
    key = {"keyframes": "matrices", "arctan": "scale", "affine": "constant", "custom-poly": "coefficients", "constant": "matrix"}[fam]
    value = doc[key]
    if fam in ("keyframes", "custom-poly"):
        value = value[0]
    return int(np.atleast_2d(np.array(value, dtype=float)).shape[0])


def _validate_path(doc):
    _require(isinstance(doc, dict), "path", "must be an object")
    fam = doc.get("family")
    _require(fam in FAMILIES, "path.family", f"must be one of {list(FAMILIES)}")
    kind = doc.get("kind", "finite")
    _require(kind in [k.value for k in IntervalKind], "path.kind", "must be finite, forward, backward or line")
    if fam not in ("keyframes", "arctan", "constant"):
        _require(kind == "finite", "path.kind", f"family {fam} only supports finite intervals")
    if fam == "keyframes":
        times, mats = doc.get("times"), doc.get("matrices")
        _require(isinstance(times, list) and len(times) >= 2, "path.times", "need at least two keyframe times")
        _require(isinstance(mats, list) and len(mats) == len(times), "path.matrices", "one matrix per keyframe time")
        N = _matrix(mats[0], "path.matrices[0]").shape[0]
        for i, m in enumerate(mats):
            _matrix(m, f"path.matrices[{i}]", N)
        for i, t in enumerate(times):
            _require(isinstance(t, (int, float)) and math.isfinite(t), f"path.times[{i}]", "must be a finite number")
        _require(all(b > a for a, b in zip(times, times[1:])), "path.times", "must increase strictly")
    elif fam == "arctan":
        N = _matrix(doc.get("scale"), "path.scale").shape[0]
        if doc.get("offset") is not None:
            _matrix(doc["offset"], "path.offset", N)
    elif fam == "affine":
        N = _matrix(doc.get("constant"), "path.constant").shape[0]
        _matrix(doc.get("slope"), "path.slope", N)
    elif fam == "custom-poly":
        coeffs = doc.get("coefficients")
        _require(isinstance(coeffs, list) and coeffs, "path.coefficients", "need a nonempty list of matrices")
        N = _matrix(coeffs[0], "path.coefficients[0]").shape[0]
        for i, m in enumerate(coeffs):
            _matrix(m, f"path.coefficients[{i}]", N)
    else:
        N = _matrix(doc.get("matrix"), "path.matrix").shape[0]
    if "T" in doc:
        _number(doc, "T", "path.T", positive=True)
    if doc.get("metric") is not None:
        g = _matrix(doc["metric"], "path.metric", N)
        _require(np.allclose(g, g.T), "path.metric", "must be symmetric")
        _require(np.all(np.linalg.eigvalsh(0.5 * (g + g.T)) > 0), "path.metric", "must be positive definite")
    return N


def build_growth(doc, N):
    kind = doc.get("kind", "poly")
    if kind == "poly":
        return GrowthFunction.poly(N, float(doc.get("param", 1.0)))
    if kind == "geom":
        return GrowthFunction.geom(N, float(doc.get("param", 2.0)))
    if kind == "ones":
        return GrowthFunction.ones(N)
    values = doc["values"]
    if len(values) != N:
        raise ValidationError("growth.values", f"expected {N} values, got {len(values)}")
    return GrowthFunction.explicit(values)


def build_path(doc, gf=None):
    """Construct an :class:`OperatorPath` from a validated path document."""
    fam, kind = doc["family"], doc.get("kind", "finite")
    kw = {"gf": gf}
    if doc.get("metric") is not None:
        kw["metric"] = np.array(doc["metric"], dtype=float)
    T = float(doc.get("T", 1.0))
    if fam == "keyframes":
        return keyframe_path(doc["times"], doc["matrices"], kind, **kw)
    if fam == "arctan":
        return arctan_path(doc["scale"], doc.get("offset"), kind, T=T, eps_tail=doc.get("eps_tail"), **kw)
    if fam == "affine":
        return affine_path(doc["constant"], doc["slope"], T, **kw)
    if fam == "custom-poly":
        return poly_path(doc["coefficients"], T, **kw)
    return constant_path(doc["matrix"], T, kind, **kw)


def parse_scenario(doc):
    """Validate a scenario document and return a :class:`Scenario`.

    Raises
    ------
    ValidationError
        With the dotted field path of the first problem found.
    """
    _require(isinstance(doc, dict), "", "scenario must be a JSON object")
    schema = doc.get("schema", SCHEMA_ID)
    _require(schema == SCHEMA_ID, "schema", f"unsupported schema {schema!r}, expected {SCHEMA_ID!r}")
    sid = doc.get("id")
    _require(isinstance(sid, str) and sid, "id", "must be a nonempty string")

    growth = doc.get("growth", {"kind": "poly", "param": 1})
    _require(isinstance(growth, dict), "growth", "must be an object")
    _require(growth.get("kind", "poly") in ("poly", "geom", "ones", "explicit"), "growth.kind", "unknown growth kind")
    if "param" in growth:
        _number(growth, "param", "growth.param", positive=True)

    path, fuzz = doc.get("path"), doc.get("fuzz")
    _require(path is not None or fuzz is not None, "path", "either path or fuzz is required")
    if path is not None:
        N = _validate_path(path)
    if fuzz is not None:
        _require(isinstance(fuzz, dict), "fuzz", "must be an object")
        for key, lo in (("count", 1), ("N", 1)):
            v = fuzz.get(key)
            _require(isinstance(v, int) and not isinstance(v, bool) and v >= lo, f"fuzz.{key}", f"must be an integer >= {lo}")
        _require(fuzz.get("kind", "finite") in [k.value for k in IntervalKind], "fuzz.kind", "unknown interval kind")
        fuzz = {"count": fuzz["count"], "N": fuzz["N"], "kind": fuzz.get("kind", "finite")}
        N = fuzz["N"]

    if growth.get("kind") == "explicit":
        values = growth.get("values")
        _require(isinstance(values, list) and len(values) == N, "growth.values", f"need {N} values")
    try:
        build_growth(growth, N)
    except (ValueError, KeyError) as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ValidationError("growth", str(exc)) from None

    grid_n = doc.get("grid_n", 200)
    _require(isinstance(grid_n, int) and not isinstance(grid_n, bool) and grid_n >= 8, "grid_n", "must be an integer >= 8")
    tol = _number(doc, "tol", "tol", default=1e-8, positive=True)
    _require(tol < 1, "tol", "must be below 1")
    checks = doc.get("checks")
    _require(isinstance(checks, list) and checks, "checks", "must be a nonempty list")
    for i, c in enumerate(checks):
        _require(c in CHECKS, f"checks[{i}]", f"unknown check {c!r}")
    seed = doc.get("seed", 0)
    _require(isinstance(seed, int) and not isinstance(seed, bool) and 0 <= seed < _SEED_MAX, "seed", "must be a 64-bit unsigned integer")
    options = doc.get("options", {})
    _require(isinstance(options, dict), "options", "must be an object")

    scenario = Scenario(sid, dict(growth), path, grid_n, tol, tuple(dict.fromkeys(checks)), seed, fuzz, dict(options))
    if path is not None:
        try:
            scenario.build_path()
        except SpecflowError as exc:
            if isinstance(exc, ValidationError):
                raise
            raise ValidationError("path", f"{type(exc).__name__}: {exc}") from None
        except ValueError as exc:
            raise ValidationError("path", str(exc)) from None
    return scenario


def load_scenario(path):
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError("", f"invalid JSON: {exc}") from None
    return parse_scenario(doc)
