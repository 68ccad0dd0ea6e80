"""Running scenarios and suites into JSON campaign reports (``specflow.report/1``)."""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .checks import CHECK_FUNCTIONS, FAIL, PASS, UNRESOLVED, Context, PathCase, axiom_results, combine_status, rounded
from .generators import path_document, random_keyframes, random_metric
from .scenario import CHECKS, Scenario, build_growth, build_path, parse_scenario

__all__ = [
    "REPORT_SCHEMA",
    "campaign_report",
    "run_scenario",
    "scenario_cases",
    "run_scenarios",
    "run_axiom_suite",
    "run_suite",
    "builtin_scenario",
    "builtin_ids",
    "report_json",
    "exit_code",
]

REPORT_SCHEMA = "specflow.report/1"
_FUZZ_STREAM = 0x5EED


def _rng(seed, stream):
    return np.random.default_rng([int(seed), int(stream)])


def scenario_cases(s: Scenario):
    if s.path is not None:
        return [PathCase(s.build_path(), s.path)]
    rng = _rng(s.seed, _FUZZ_STREAM)
    gf = s.gf()
    cases = []
    for _ in range(s.fuzz["count"]):
        times, mats = random_keyframes(rng, s.fuzz["N"], s.fuzz["kind"])
        doc = path_document(times, mats, s.fuzz["kind"])
        cases.append(PathCase(build_path(doc, gf), doc))
    return cases


def run_scenario(s):
    """Execute the checks of one scenario; deterministic given its seed."""
    if isinstance(s, dict):
        s = parse_scenario(s)
    t0 = time.perf_counter()
    cases = scenario_cases(s)
    results = []
    for name in s.checks:
        ctx = Context(
            cases=cases,
            gf_factory=lambda N, g=s.growth: build_growth(g, N),
            grid_n=s.grid_n,
            tol=s.tol,
            rng=_rng(s.seed, 1 + CHECKS.index(name)),
            options=s.options,
            N=s.N,
        )
        results.append(CHECK_FUNCTIONS[name](ctx))
    return _entry(s.id, results, s.to_dict(), time.perf_counter() - t0)


def _entry(sid, results, inputs, wall):
    return {
        "id": sid,
        "status": combine_status(r.status for r in results),
        "checks": [r.to_dict() for r in results],
        "inputs": rounded(inputs, 17),
        "wall_time": round(wall, 3),
    }


def _pool_size():
    try:
        cap = int(os.environ.get("SPECFLOW_THREADS", "0"))
    except ValueError:
        cap = 0
    n = os.cpu_count() or 1
    return max(1, min(cap, n) if cap > 0 else n)


def run_scenarios(scenarios):
    """Run scenarios in a thread pool; entries come back ordered by id."""
    workers = _pool_size()
    if workers == 1 or len(scenarios) < 2:
        entries = [run_scenario(s) for s in scenarios]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            entries = list(pool.map(run_scenario, scenarios))
    return sorted(entries, key=lambda e: e["id"])


def campaign_report(suite, seed, entries, wall):
    counts = {k: sum(e["status"] == k for e in entries) for k in (PASS, FAIL, UNRESOLVED)}
    return {
        "schema": REPORT_SCHEMA,
        "suite": suite,
        "seed": seed,
        "status": combine_status(e["status"] for e in entries),
        "summary": counts,
        "scenarios": entries,
        "wall_time": round(wall, 3),
    }


def run_axiom_suite(seed=0, N=4, count=10):
    """The five spectral-flow axioms, each reported as its own entry."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(int(seed))
    entries = []
    for res in axiom_results(rng, N, count):
        entries.append(_entry(res.check.replace("_", "-"), [res], {"suite": "axioms", "seed": seed, "N": N, "count": count}, 0.0))
    entries.sort(key=lambda e: e["id"])
    return campaign_report("axioms", seed, entries, time.perf_counter() - t0)


# -- builtin scenarios -----------------------------------------------------------


def _diag(*v):
    return np.diag(v).tolist()


def _symmetrizable_doc():
    rng = np.random.default_rng(11)
    g = random_metric(rng, 3)
    ginv = np.linalg.inv(g)
    s0 = np.array([[1.0, 0.4, 0.0], [0.4, -0.8, 0.3], [0.0, 0.3, -1.2]])
    s1 = np.array([[-1.5, 0.2, 0.1], [0.2, 1.4, 0.0], [0.1, 0.0, 2.0]])
    return {"family": "affine", "kind": "finite", "constant": (ginv @ s0).tolist(), "slope": (ginv @ s1).tolist(), "metric": g.tolist(), "T": 1.0}


def _builtin_docs():
    offset = [[0.2, 0.3, 0.0], [0.3, -0.1, 0.0], [0.0, 0.0, 0.4]]
    return {
        "normalization": {
            "path": {"family": "arctan", "kind": "line", "scale": [[1.0]]},
            "checks": ["index_theorem"],
        },
        "normalization-finite": {
            "path": {"family": "arctan", "kind": "finite", "scale": [[1.0]], "T": 1.0},
            "checks": ["index_theorem", "adjoint", "cokernel"],
        },
        "cokernel-descent": {
            "path": {"family": "arctan", "kind": "finite", "scale": [[-1.0]], "T": 1.0},
            "checks": ["index_theorem", "cokernel"],
        },
        "constant-floer": {
            "path": {"family": "constant", "kind": "finite", "matrix": _diag(1.0, -1.0, 2.0, -2.0), "T": 1.0},
            "checks": ["index_theorem", "constant_solver"],
        },
        "figure-two-crossings": {
            "path": {
                "family": "keyframes",
                "kind": "finite",
                "times": [-1.0, 0.0, 1.0],
                "matrices": [
                    _diag(-1.0, -0.5, 1.5),
                    [[0.2, 0.6, 0.0], [0.6, -0.3, 0.4], [0.0, 0.4, 1.0]],
                    _diag(1.2, 0.8, 2.0),
                ],
            },
            "checks": ["index_theorem", "adjoint", "shift_lemma", "concatenation"],
        },
        "forward-tail": {
            "path": {"family": "arctan", "kind": "forward", "scale": _diag(1.0, 0.5), "offset": _diag(-0.5, 1.0)},
            "checks": ["index_theorem", "adjoint"],
        },
        "backward-tail": {
            "path": {"family": "arctan", "kind": "backward", "scale": _diag(1.0, 1.0), "offset": _diag(0.5, 1.0)},
            "checks": ["index_theorem", "adjoint"],
        },
        "line-tail": {
            "path": {"family": "arctan", "kind": "line", "scale": _diag(1.0, -1.0, 1.0), "offset": offset},
            "checks": ["index_theorem", "adjoint", "shift_lemma"],
        },
        "symmetrizable": {
            "path": _symmetrizable_doc(),
            "checks": ["index_theorem", "adjoint", "cokernel", "homotopy", "constant_solver"],
        },
        "fuzz": {
            "fuzz": {"count": 20, "N": 6, "kind": "finite"},
            "seed": 42,
            "checks": ["index_theorem"],
        },
    }


def builtin_ids():
    return sorted(_builtin_docs())


def builtin_scenario(name, seed=None):
    docs = _builtin_docs()
    if name not in docs:
        raise KeyError(f"unknown builtin scenario {name!r}; choose from {sorted(docs)}")
    doc = {"schema": "specflow.scenario/1", "id": name, "growth": {"kind": "poly", "param": 1}, "grid_n": 200, "seed": 0}
    doc.update(docs[name])
    if seed is not None:
        doc["seed"] = int(seed)
    return parse_scenario(doc)


def _seeded_docs(seed):
    base = {"schema": "specflow.scenario/1", "growth": {"kind": "poly", "param": 1}, "grid_n": 200, "seed": int(seed)}
    return [
        dict(base, id="fuzz-finite", fuzz={"count": 8, "N": 4, "kind": "finite"},
             checks=["index_theorem", "adjoint", "shift_lemma", "concatenation", "homotopy"],
             options={"shift_pairs": 1, "homotopy_samples": 5, "homotopy_grid_n": 100, "r_family_grid_n": 30}),
        dict(base, id="fuzz-tails", fuzz={"count": 3, "N": 3, "kind": "line"}, checks=["index_theorem"]),
        dict(base, id="fuzz-forward", fuzz={"count": 3, "N": 3, "kind": "forward"}, checks=["index_theorem"]),
        dict(base, id="fuzz-backward", fuzz={"count": 3, "N": 3, "kind": "backward"}, checks=["index_theorem"]),
        dict(base, id="fuzz-cokernel", fuzz={"count": 3, "N": 3, "kind": "finite"}, checks=["cokernel"],
             options={"cokernel_grid_n": 60}),
        dict(base, id="trace-neumann", fuzz={"count": 1, "N": 16, "kind": "finite"}, checks=["trace_bounds", "neumann"],
             options={"trace_trials": 200, "neumann_trials": 50}),
        dict(base, id="constant-solver", fuzz={"count": 4, "N": 4, "kind": "finite"}, checks=["constant_solver"]),
    ]


def run_suite(suite="full", seed=0):
    """``axioms``: the axiom suite; ``full``: builtins, seeded fuzz scenarios and axioms."""
    if suite == "axioms":
        return run_axiom_suite(seed)
    if suite != "full":
        raise ValueError(f"unknown suite {suite!r}")
    t0 = time.perf_counter()
    scenarios = [builtin_scenario(n) for n in builtin_ids()] + [parse_scenario(d) for d in _seeded_docs(seed)]
    entries = run_scenarios(scenarios)
    axioms = run_axiom_suite(seed)["scenarios"]
    entries = sorted(entries + axioms, key=lambda e: e["id"])
    return campaign_report("full", seed, entries, time.perf_counter() - t0)


def report_json(report):
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def exit_code(report_or_status):
    status = report_or_status["status"] if isinstance(report_or_status, dict) else report_or_status
    return {PASS: 0, FAIL: 1, UNRESOLVED: 2}[status]
