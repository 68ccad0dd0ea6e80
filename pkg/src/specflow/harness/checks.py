"""Verification checks.

Each check returns a :class:`CheckResult` whose ``provenance`` is a key of
:data:`PROVENANCE`, the table of mathematical statements the harness tests.
Failing cases carry the inputs needed to replay them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import PerturbationTooLarge
from ..flow import branch_trace, concatenate, direct_sum, spectral_flow
from ..fredholm import (
    DiscretePath,
    assemble_adjoint_augmented,
    assemble_augmented,
    cokernel_vs_adjoint_kernel,
    constant_path_solve,
    ev_section,
    evaluation_map,
    neumann_invert,
    numeric_index,
    resolve_index,
    split_family_index,
    system_residual,
)
from ..hessian import adapted_inner, spectral_content
from ..paths import IntervalKind, arctan_path, constant_path, keyframe_path
from ..scale import r_norm
from .generators import (
    path_document,
    random_glued_pair,
    random_invertible,
    random_keyframes,
    random_shift,
    random_symmetric,
)

__all__ = ["PROVENANCE", "CheckResult", "PathCase", "combine_status", "rounded", "CHECK_FUNCTIONS"]

PASS, FAIL, UNRESOLVED = "pass", "fail", "UNRESOLVED"

PROVENANCE = {
    "index theorem": "The augmented operator of an admissible path is Fredholm with index equal to the spectral flow.",
    "normalization axiom": "The path arctan(s) on the real line has spectral flow one.",
    "constant axiom": "A constant path of invertible operators has spectral flow zero.",
    "homotopy axiom": "Spectral flow is constant along homotopies with fixed invertible endpoints.",
    "direct sum axiom": "Spectral flow is additive under direct sums.",
    "catenation axiom": "Spectral flow is additive under concatenation at an invertible junction.",
    "spectral flow axioms": "Spectral flow satisfies the homotopy, constant, direct sum, normalization and catenation properties.",
    "constant path bijectivity": "For a constant invertible path the augmented operator is bijective with an explicit solution formula and energy bound.",
    "concatenation additivity": "The index is additive under concatenation at an invertible junction.",
    "domain homotopy invariance": "The index is constant along the interpolating family of split-interval domains.",
    "adjoint index relation": "The index of the adjoint augmented operator is minus the index.",
    "shift lemma": "Shifting the boundary projections changes the index by the difference of spectral contents.",
    "cokernel identification": "The cokernel of the augmented operator is identified with the kernel of its adjoint.",
    "homotopy invariance": "The index is constant along homotopies with continuously varying boundary projections.",
    "tail truncation": "On half-infinite intervals and the line the index is computed on a truncation beyond which the tails have index zero.",
    "trace bound": "Evaluation at the endpoint is bounded by the square root of two into the interpolation space and has explicit exponential right inverses.",
    "quantitative invertibility": "Small perturbations of invertible operators stay invertible with an explicit inverse bound.",
}


def rounded(x, digits=10):
    """Round floats to ``digits`` significant digits for stable reports."""
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if not math.isfinite(x):
            return "inf" if x > 0 else ("-inf" if x < 0 else "nan")
        return float(f"{x:.{digits}g}")
    if isinstance(x, dict):
        return {str(k): rounded(v, digits) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [rounded(v, digits) for v in x]
    if isinstance(x, np.ndarray):
        return rounded(x.tolist(), digits)
    return x


def combine_status(statuses):
    statuses = list(statuses)
    if FAIL in statuses:
        return FAIL
    if UNRESOLVED in statuses:
        return UNRESOLVED
    return PASS


@dataclass
class CheckResult:
    check: str
    status: str
    measured: object
    expected: object
    provenance: str
    detail: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def __post_init__(self):
        if self.provenance not in PROVENANCE:
            raise KeyError(f"unknown provenance label {self.provenance!r}")

    @property
    def passed(self):
        return self.status == PASS

    def to_dict(self):
        out = {
            "check": self.check,
            "status": self.status,
            "measured": self.measured,
            "expected": self.expected,
            "provenance": self.provenance,
        }
        if self.detail:
            out["detail"] = self.detail
        if self.failures:
            out["failures"] = self.failures
        return rounded(out)


@dataclass
class PathCase:
    """A path together with the document that rebuilds it."""

    path: object
    doc: dict


@dataclass
class Context:
    cases: list
    gf_factory: object
    grid_n: int = 200
    tol: float = 1e-8
    rng: np.random.Generator = None
    options: dict = field(default_factory=dict)
    N: int = 4

    def opt(self, key, default):
        return self.options.get(key, default)


def _status(ok, resolved=True):
    if not ok:
        return FAIL
    return PASS if resolved else UNRESOLVED


# -- index theorem ----------------------------------------------------------


def index_case(path, grid_n=200, tol=1e-8):
    """Numeric index against spectral flow for one path; dict of measurements."""
    flow = spectral_flow(path)
    first = numeric_index(assemble_augmented(path, grid_n), tol)
    report, tried = (first, [grid_n]) if first.resolved else resolve_index(path, 2 * grid_n, tol)
    if not first.resolved:
        tried = [grid_n] + tried
    system_shape = first.cols - first.rows
    out = {
        "flow": flow,
        "index": report.index,
        "shape_index": system_shape,
        "status": report.status,
        "unresolved_first": not first.resolved,
        "grids": tried,
        "sv_gap": report.sv_gap,
    }
    ok = report.index == flow and system_shape == flow
    if path.kind is not IntervalKind.FINITE:
        doubled, _ = resolve_index(path.with_tail_radius(2.0 * path.tail_radius), grid_n, tol)
        out["index_doubled_tail"] = doubled.index
        ok = ok and doubled.index == flow
        out["status"] = "RESOLVED" if report.resolved and doubled.resolved else "UNRESOLVED"
    out["ok"] = ok
    return out


def check_index_theorem(ctx):
    rows = [index_case(c.path, ctx.grid_n, ctx.tol) for c in ctx.cases]
    failures = [
        {"path": c.doc, "grid_n": ctx.grid_n, "tol": ctx.tol, "measured": r["index"], "expected": r["flow"]}
        for c, r in zip(ctx.cases, rows)
        if not r["ok"]
    ]
    resolved = all(r["status"] == "RESOLVED" for r in rows)
    kinds = {c.path.kind for c in ctx.cases}
    label = "index theorem" if kinds == {IntervalKind.FINITE} else "tail truncation"
    detail = {
        "paths": len(rows),
        "unresolved_before_doubling": sum(r["unresolved_first"] for r in rows),
        "min_sv_gap": min(r["sv_gap"] for r in rows),
        "shape_index": [r["shape_index"] for r in rows],
    }
    if any("index_doubled_tail" in r for r in rows):
        detail["index_doubled_tail"] = [r.get("index_doubled_tail") for r in rows]
    return CheckResult(
        "index_theorem",
        _status(not failures, resolved),
        [r["index"] for r in rows],
        [r["flow"] for r in rows],
        label,
        detail,
        failures,
    )


# -- adjoint ---------------------------------------------------------------


def adjoint_case(path, grid_n=200, tol=1e-8):
    fwd, _ = resolve_index(path, grid_n, tol)
    adj, _ = resolve_index(path, grid_n, tol, assemble=assemble_adjoint_augmented)
    return {
        "index": fwd.index,
        "adjoint_index": adj.index,
        "ok": fwd.index == -adj.index,
        "resolved": fwd.resolved and adj.resolved,
    }


def check_adjoint(ctx):
    rows = [adjoint_case(c.path, ctx.grid_n, ctx.tol) for c in ctx.cases]
    failures = [
        {"path": c.doc, "grid_n": ctx.grid_n, "index": r["index"], "adjoint_index": r["adjoint_index"]}
        for c, r in zip(ctx.cases, rows)
        if not r["ok"]
    ]
    return CheckResult(
        "adjoint",
        _status(not failures, all(r["resolved"] for r in rows)),
        [-r["adjoint_index"] for r in rows],
        [r["index"] for r in rows],
        "adjoint index relation",
        {"adjoint_index": [r["adjoint_index"] for r in rows]},
        failures,
    )


# -- cokernel ----------------------------------------------------------------


def cokernel_case(path, grid_n=100, tol=1e-8):
    comp = cokernel_vs_adjoint_kernel(path, grid_n, tol)
    limit = 5.0 * comp.step
    return {
        "dim_coker": comp.dim_coker,
        "dim_adjoint_kernel": comp.dim_adjoint_kernel,
        "max_angle": comp.max_angle,
        "limit": limit,
        "ok": comp.dims_equal and comp.max_angle <= limit,
        "resolved": comp.status == "RESOLVED",
    }


def check_cokernel(ctx):
    grid_n = int(ctx.opt("cokernel_grid_n", min(ctx.grid_n, 100)))
    rows = [cokernel_case(c.path, grid_n, ctx.tol) for c in ctx.cases]
    failures = [
        {"path": c.doc, "grid_n": grid_n, **{k: r[k] for k in ("dim_coker", "dim_adjoint_kernel", "max_angle")}}
        for c, r in zip(ctx.cases, rows)
        if not r["ok"]
    ]
    return CheckResult(
        "cokernel",
        _status(not failures, all(r["resolved"] for r in rows)),
        {"dim_coker": [r["dim_coker"] for r in rows], "max_angle": max(r["max_angle"] for r in rows)},
        {"dim_adjoint_kernel": [r["dim_adjoint_kernel"] for r in rows], "angle_limit": rows[0]["limit"]},
        "cokernel identification",
        {"grid_n": grid_n},
        failures,
    )


# -- concatenation -------------------------------------------------------------


def _junction(path, fraction=0.3, samples=9):
    """Interior time with the largest invertibility margin near the middle."""
    a, b = path.window
    cands = np.linspace(a + fraction * (b - a), b - fraction * (b - a), samples)
    margins = [path.operator(t).inv_margin for t in cands]
    return float(cands[int(np.argmax(margins))])


R_FAMILY = (0.0, 0.25, 0.5, 0.75, 1.0)


def concatenation_case(left, right, grid_n=200, tol=1e-8, r_grid_n=None):
    """Index additivity for a glued pair and, optionally, the split-domain family."""
    glued = concatenate(left, right)
    i_l, _ = resolve_index(left, grid_n, tol)
    i_r, _ = resolve_index(right, grid_n, tol)
    i_g, _ = resolve_index(glued, 2 * grid_n, tol)
    out = {
        "left": i_l.index,
        "right": i_r.index,
        "glued": i_g.index,
        "ok": i_g.index == i_l.index + i_r.index,
        "resolved": i_l.resolved and i_r.resolved and i_g.resolved,
    }
    if r_grid_n:
        junction = left.window[1]
        reps = [split_family_index(glued, r, r_grid_n, tol, junction) for r in R_FAMILY]
        out["r_family"] = [rep.index for rep in reps]
        out["ok"] = out["ok"] and len(set(out["r_family"])) == 1 and out["r_family"][0] == i_g.index
        out["resolved"] = out["resolved"] and all(rep.resolved for rep in reps)
    return out


def check_concatenation(ctx):
    r_grid = int(ctx.opt("r_family_grid_n", 40))
    rows, failures = [], []
    for c in ctx.cases:
        path = c.path if c.path.kind is IntervalKind.FINITE else c.path.truncated()
        m = _junction(path)
        a, b = path.window
        row = concatenation_case(path.restrict(a, m), path.restrict(m, b), ctx.grid_n, ctx.tol, r_grid)
        row["junction"] = m
        rows.append(row)
        if not row["ok"]:
            failures.append({"path": c.doc, "junction": m, "grid_n": ctx.grid_n, **{k: row[k] for k in ("left", "right", "glued", "r_family")}})
    return CheckResult(
        "concatenation",
        _status(not failures, all(r["resolved"] for r in rows)),
        {"glued": [r["glued"] for r in rows], "r_family": [r["r_family"] for r in rows]},
        {"sum": [r["left"] + r["right"] for r in rows]},
        "concatenation additivity",
        {"junctions": [r["junction"] for r in rows], "r_values": list(R_FAMILY), "r_family_grid_n": r_grid},
        failures,
    )


# -- shift lemma ---------------------------------------------------------------


def shift_case(path, lam, mu, grid_n=200, tol=1e-8):
    a_op, b_op = path.start_operator(), path.end_operator()
    expected = spectral_content(a_op, lam[0], mu[0]) - spectral_content(b_op, lam[1], mu[1])
    i_lam, _ = resolve_index(path, grid_n, tol, shifts=tuple(lam))
    i_mu, _ = resolve_index(path, grid_n, tol, shifts=tuple(mu))
    measured = i_mu.index - i_lam.index
    return {"measured": measured, "expected": expected, "ok": measured == expected, "resolved": i_lam.resolved and i_mu.resolved}


def check_shift_lemma(ctx):
    pairs = int(ctx.opt("shift_pairs", 2))
    rows, failures = [], []
    for c in ctx.cases:
        a_op, b_op = c.path.start_operator(), c.path.end_operator()
        for _ in range(pairs):
            lam = (random_shift(ctx.rng, a_op), random_shift(ctx.rng, b_op))
            mu = (random_shift(ctx.rng, a_op), random_shift(ctx.rng, b_op))
            row = shift_case(c.path, lam, mu, ctx.grid_n, ctx.tol)
            rows.append(row)
            if not row["ok"]:
                failures.append({"path": c.doc, "lambda": list(lam), "mu": list(mu), "grid_n": ctx.grid_n, "measured": row["measured"], "expected": row["expected"]})
    return CheckResult(
        "shift_lemma",
        _status(not failures, all(r["resolved"] for r in rows)),
        [r["measured"] for r in rows],
        [r["expected"] for r in rows],
        "shift lemma",
        {"triples": len(rows)},
        failures,
    )


# -- homotopy --------------------------------------------------------------------


def homotopy_family(path, rng, samples=11):
    """Paths ``A_r = A + r B`` with ``B`` moving the endpoints within their margins."""
    a, b = path.window
    N = path.N
    ginv = np.eye(N) if path.metric_inv is None else path.metric_inv
    gscale = np.linalg.norm(ginv, 2)

    def small(op):
        e = random_symmetric(rng, N)
        return ginv @ (e * (0.4 * op.inv_margin / (gscale * np.linalg.norm(e, 2))))

    e0, e1 = small(path.start_operator()), small(path.end_operator())
    bump = ginv @ random_symmetric(rng, N)
    f = path.sampler

    def make(r):
        def sampler(s):
            w = (s - a) / (b - a)
            return np.asarray(f(s), dtype=float) + r * ((1 - w) * e0 + w * e1 + math.sin(math.pi * w) * bump)

        return path._derived(IntervalKind.FINITE, sampler, interval=(a, b), family="homotopy")

    return [make(r) for r in np.linspace(0.0, 1.0, samples)]


def check_homotopy(ctx):
    samples = int(ctx.opt("homotopy_samples", 11))
    grid_n = int(ctx.opt("homotopy_grid_n", ctx.grid_n))
    rows, failures = [], []
    for c in ctx.cases:
        base = c.path if c.path.kind is IntervalKind.FINITE else c.path.truncated()
        family = homotopy_family(base, ctx.rng, samples)
        reps = [resolve_index(p, grid_n, ctx.tol)[0] for p in family]
        indices = [r.index for r in reps]
        flow = spectral_flow(base)
        ok = all(i == flow for i in indices)
        rows.append({"indices": indices, "flow": flow, "ok": ok, "resolved": all(r.resolved for r in reps)})
        if not ok:
            failures.append({"path": c.doc, "grid_n": grid_n, "indices": indices, "flow": flow})
    return CheckResult(
        "homotopy",
        _status(not failures, all(r["resolved"] for r in rows)),
        [r["indices"] for r in rows],
        [r["flow"] for r in rows],
        "homotopy invariance",
        {"samples": samples},
        failures,
    )


# -- constant path solver ----------------------------------------------------------


def _smooth_rhs(rng, N):
    amp = rng.standard_normal((3, N))

    def eta(t):
        return amp[0] + amp[1] * np.sin(2.0 * t + 0.3) + amp[2] * t * t

    return eta


def constant_solver_case(op, T, rng, grid_n=200, tol=1e-8):
    """Bijectivity, second-order residual and energy bound for a constant operator."""
    path = constant_path(op.entries, T, gf=op.gf, metric=op.metric, metric_inv=op.metric_inv)
    rep = numeric_index(assemble_augmented(path, grid_n), tol)
    N = op.N
    fn = _smooth_rhs(rng, N)
    x, y = rng.standard_normal(N), rng.standard_normal(N)
    res = []
    for n in (grid_n, 2 * grid_n):
        eta = DiscretePath.from_function(fn, -T, T, n, op.gf, op.metric)
        xi = constant_path_solve(op, T, eta, x, y)
        res.append(float(np.linalg.norm(system_residual(assemble_augmented(path, n), xi, eta, x, y))))
    ratio = res[0] / res[1] if res[1] > 0 else math.inf

    eta = DiscretePath.from_function(fn, -T, T, grid_n, op.gf, op.metric)
    xi = constant_path_solve(op, T, eta, x, y)
    adapted = adapted_inner(op)
    xp = adapted.norm(_part(op, x, positive=True), 0.5)
    yn = adapted.norm(_part(op, y, positive=False), 0.5)
    lhs = xi.p1_norm(h1=op.entries) ** 2
    rhs = 10.0 * eta.p0_norm() ** 2 + 4.0 * yn**2 + 4.0 * xp**2
    ok_index = rep.dim_ker == 0 and rep.dim_coker == 0
    ok = ok_index and 3.0 <= ratio <= 5.0 and lhs <= rhs
    return {
        "dim_ker": rep.dim_ker,
        "dim_coker": rep.dim_coker,
        "residual_ratio": ratio,
        "residuals": res,
        "energy": lhs,
        "energy_bound": rhs,
        "ok": ok,
        "resolved": rep.resolved,
    }


def _part(op, v, positive):
    sel = op.eigenvalues > 0 if positive else op.eigenvalues < 0
    c = op.coefficients(v)
    return op.eigenvectors[:, sel] @ c[sel]


def check_constant_solver(ctx):
    rows, failures = [], []
    for c in ctx.cases:
        path = c.path
        op = path.start_operator()
        a, b = path.window
        T = 0.5 * (b - a)
        row = constant_solver_case(op, T, ctx.rng, ctx.grid_n, ctx.tol)
        rows.append(row)
        if not row["ok"]:
            failures.append({"operator": op.entries.tolist(), "T": T, "grid_n": ctx.grid_n, **{k: row[k] for k in ("dim_ker", "dim_coker", "residual_ratio", "energy", "energy_bound")}})
    return CheckResult(
        "constant_solver",
        _status(not failures, all(r["resolved"] for r in rows)),
        {k: [r[k] for r in rows] for k in ("dim_ker", "dim_coker", "residual_ratio", "energy")},
        {"dim_ker": 0, "dim_coker": 0, "residual_ratio": [3.0, 5.0], "energy_bound": [r["energy_bound"] for r in rows]},
        "constant path bijectivity",
        {},
        failures,
    )


# -- trace bounds ----------------------------------------------------------------------


def _trace_trial(rng, gf, grid_n, t):
    N = gf.N
    grid = np.linspace(0.0, 1.0, grid_n + 1)
    kind = t % 3
    if kind == 0:
        # exponential profiles with random rates, the extremal shape
        rates = np.sqrt(gf.values) * rng.uniform(0.2, 3.0, N)
        values = np.exp(-np.outer(grid, rates)) * rng.standard_normal(N)
    elif kind == 1:
        walk = np.cumsum(rng.standard_normal((grid_n + 1, N)), axis=0) / math.sqrt(grid_n)
        values = walk + rng.standard_normal(N)
    else:
        freq = rng.uniform(0.0, 6.0, N)
        values = np.cos(np.outer(grid, freq) + rng.uniform(0, 2 * math.pi, N)) * rng.standard_normal(N)
    return DiscretePath(grid, values, gf)


def trace_bounds_case(gf, rng, trials=1000, grid_n=200):
    worst, worst_bound = 0.0, math.inf
    for t in range(trials):
        ev = evaluation_map(_trace_trial(rng, gf, grid_n, t), gf)
        if ev.ratio > worst:
            worst = ev.ratio
        worst_bound = ev.bound
    section_err, energy_excess = 0.0, -math.inf
    for _ in range(max(1, trials // 10)):
        x0 = rng.standard_normal(gf.N)
        sec = ev_section(x0, gf, grid_n)
        ev = evaluation_map(sec, gf)
        section_err = max(section_err, float(np.max(np.abs(ev.endpoint - x0))))
        energy_excess = max(energy_excess, sec.trace_norm() ** 2 - 2.0 * r_norm(x0, 0.5, gf) ** 2)
    ok = worst <= worst_bound and section_err == 0.0 and energy_excess <= 0.0
    return {"max_ratio": worst, "bound": worst_bound, "section_error": section_err, "energy_excess": energy_excess, "ok": ok}


def check_trace_bounds(ctx):
    trials = int(ctx.opt("trace_trials", 200))
    N = ctx.N
    gf = ctx.gf_factory(N)
    row = trace_bounds_case(gf, ctx.rng, trials, ctx.grid_n)
    return CheckResult(
        "trace_bounds",
        _status(row["ok"]),
        {"max_ratio": row["max_ratio"], "section_error": row["section_error"], "energy_excess": row["energy_excess"]},
        {"ratio_bound": row["bound"], "section_error": 0.0, "energy_excess": "<= 0"},
        "trace bound",
        {"trials": trials, "N": N, "growth": gf.values.tolist() if N <= 32 else gf.kind},
        [] if row["ok"] else [{"seed_stream": "trace_bounds", "N": N, "trials": trials, **row}],
    )


# -- quantitative invertibility ----------------------------------------------------------


def neumann_case(rng, N, product):
    t = rng.standard_normal((N, N)) + 2.0 * math.sqrt(N) * np.eye(N)
    p = rng.standard_normal((N, N))
    nt = np.linalg.norm(np.linalg.inv(t), 2)
    p *= product / (nt * np.linalg.norm(p, 2))
    res = neumann_invert(t, p)
    direct = np.linalg.inv(t + p)
    err = float(np.linalg.norm(res.inverse - direct, 2) / np.linalg.norm(direct, 2))
    measured = float(np.linalg.norm(direct, 2))
    return {
        "measured": measured,
        "bound": res.bound,
        "series_error": err,
        "ok": measured <= res.bound * (1.0 + 1e-10) and res.holds and err < 1e-8,
        "T": t,
        "P": p,
    }


def check_neumann(ctx):
    trials = int(ctx.opt("neumann_trials", 50))
    N = max(ctx.N, 2)
    rows, failures = [], []
    for _ in range(trials):
        row = neumann_case(ctx.rng, N, float(ctx.rng.uniform(0.0, 0.9)))
        rows.append(row)
        if not row["ok"]:
            failures.append({"T": row["T"].tolist(), "P": row["P"].tolist(), "measured": row["measured"], "bound": row["bound"]})
    # the hypothesis must be enforced as well
    t = np.eye(N)
    try:
        neumann_invert(t, 1.5 * np.eye(N))
        rejected = False
    except PerturbationTooLarge:
        rejected = True
    ok = not failures and rejected
    worst = max(r["measured"] / r["bound"] for r in rows)
    return CheckResult(
        "neumann",
        _status(ok),
        {"max_norm_over_bound": worst, "max_series_error": max(r["series_error"] for r in rows), "rejects_large": rejected},
        {"max_norm_over_bound": "<= 1 + 1e-10", "rejects_large": True},
        "quantitative invertibility",
        {"trials": trials, "N": N},
        failures,
    )


# -- spectral flow axioms ------------------------------------------------------------------


TRACE_GRID = 801


def _trace_flow(path):
    """Spectral flow counted from sampled branch crossings."""
    tr = branch_trace(path, TRACE_GRID)
    return tr.net_crossings, not tr.ambiguous


def axiom_constant(rng, N, count=10):
    rows, failures = [], []
    for _ in range(count):
        m = random_invertible(rng, N)
        p = constant_path(m)
        flow = spectral_flow(p)
        crossed, clean = _trace_flow(p)
        rows.append(flow)
        if flow != 0 or crossed != 0:
            failures.append({"matrix": m.tolist(), "flow": flow, "crossings": crossed})
    return CheckResult("axiom_constant", _status(not failures), rows, [0] * count, "constant axiom", {"paths": count}, failures)


def axiom_normalization():
    p = arctan_path([[1.0]], kind="line")
    flow = spectral_flow(p)
    rep, _ = resolve_index(p, 200)
    crossed, _ = _trace_flow(p)
    ok = flow == 1 and rep.index == 1 and crossed == 1
    return CheckResult(
        "axiom_normalization",
        _status(ok, rep.resolved),
        {"flow": flow, "index": rep.index, "crossings": crossed},
        {"flow": 1, "index": 1, "crossings": 1},
        "normalization axiom",
        {"tail_radius": p.tail_radius},
        [] if ok else [{"path": {"family": "arctan", "kind": "line", "scale": [[1.0]]}}],
    )


def axiom_direct_sum(rng, N, count=10):
    measured, expected, failures = [], [], []
    for _ in range(count):
        n1 = int(rng.integers(1, N)) if N > 1 else 1
        n2 = max(N - n1, 1)
        t1, m1 = random_keyframes(rng, n1)
        t2, m2 = random_keyframes(rng, n2)
        p1 = keyframe_path(t1, m1)
        p2 = keyframe_path(t2, m2)
        s = direct_sum(p1, p2)
        f1, f2, fs = spectral_flow(p1), spectral_flow(p2), spectral_flow(s)
        crossed, _ = _trace_flow(s)
        measured.append(fs)
        expected.append(f1 + f2)
        if fs != f1 + f2 or crossed != fs:
            failures.append({"left": path_document(t1, m1), "right": path_document(t2, m2), "sum_flow": fs, "flows": [f1, f2], "crossings": crossed})
    return CheckResult("axiom_direct_sum", _status(not failures), measured, expected, "direct sum axiom", {"pairs": count}, failures)


def axiom_catenation(rng, N, count=10):
    measured, expected, failures = [], [], []
    for _ in range(count):
        (t1, m1), (t2, m2) = random_glued_pair(rng, N)
        left, right = keyframe_path(t1, m1), keyframe_path(t2, m2)
        glued = concatenate(left, right)
        fl, fr, fg = spectral_flow(left), spectral_flow(right), spectral_flow(glued)
        crossed, _ = _trace_flow(glued)
        measured.append(fg)
        expected.append(fl + fr)
        if fg != fl + fr or crossed != fg:
            failures.append({"left": path_document(t1, m1), "right": path_document(t2, m2), "glued": fg, "parts": [fl, fr], "crossings": crossed})
    return CheckResult("axiom_catenation", _status(not failures), measured, expected, "catenation axiom", {"pairs": count}, failures)


def axiom_homotopy(rng, N, count=3, samples=11):
    measured, expected, failures = [], [], []
    for _ in range(count):
        t0, m0 = random_keyframes(rng, N, k=4)
        m1 = [m0[0]] + [random_symmetric(rng, N) for _ in range(2)] + [m0[-1]]
        flows = []
        for r in np.linspace(0.0, 1.0, samples):
            mats = [(1 - r) * a + r * b for a, b in zip(m0, m1)]
            p = keyframe_path(t0, mats)
            crossed, _ = _trace_flow(p)
            flows.append(crossed)
        target = spectral_flow(keyframe_path(t0, m0))
        measured.append(flows)
        expected.append(target)
        if any(f != target for f in flows):
            failures.append({"start": path_document(t0, m0), "end": path_document(t0, m1), "crossings": flows})
    return CheckResult("axiom_homotopy", _status(not failures), measured, expected, "homotopy axiom", {"homotopies": count, "samples": samples}, failures)


def axiom_results(rng, N=4, count=10):
    """The five spectral-flow axioms on families drawn from ``rng``."""
    return [
        axiom_homotopy(rng, N),
        axiom_constant(rng, N, count),
        axiom_direct_sum(rng, N, count),
        axiom_normalization(),
        axiom_catenation(rng, N, count),
    ]


def check_axioms(ctx):
    subs = axiom_results(ctx.rng, max(ctx.N, 2), int(ctx.opt("axiom_count", 10)))
    status = combine_status(s.status for s in subs)
    return CheckResult(
        "axioms",
        status,
        {s.check: s.status for s in subs},
        {s.check: PASS for s in subs},
        "spectral flow axioms",
        {"axioms": [s.to_dict() for s in subs]},
        [f for s in subs for f in s.failures],
    )


CHECK_FUNCTIONS = {
    "index_theorem": check_index_theorem,
    "axioms": check_axioms,
    "concatenation": check_concatenation,
    "adjoint": check_adjoint,
    "shift_lemma": check_shift_lemma,
    "homotopy": check_homotopy,
    "cokernel": check_cokernel,
    "trace_bounds": check_trace_bounds,
    "neumann": check_neumann,
    "constant_solver": check_constant_solver,
}
