"""Command-line interface.

Exit codes: 0 pass, 1 failure (or invalid input), 2 numerically UNRESOLVED.
Scenario arguments are JSON files; ``builtin:<name>`` selects a builtin.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import SpecflowError, ValidationError
from .flow import branch_trace, spectral_flow
from .fredholm import resolve_index
from .harness import builtin_ids, builtin_scenario, exit_code, load_scenario, report_json, run_scenarios, run_suite
from .harness.campaign import campaign_report, scenario_cases

EXIT_PASS, EXIT_FAIL, EXIT_UNRESOLVED = 0, 1, 2


def _scenario(arg):
    if arg.startswith("builtin:"):
        return builtin_scenario(arg.split(":", 1)[1])
    return load_scenario(arg)


def _emit(obj, out=None):
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_flow(args):
    s = _scenario(args.scenario)
    flows = [spectral_flow(c.path) for c in scenario_cases(s)]
    _emit({"id": s.id, "spectral_flow": flows if len(flows) > 1 else flows[0]})
    return EXIT_PASS


def cmd_index(args):
    s = _scenario(args.scenario)
    grid_n = args.grid_n or s.grid_n
    reports, code = [], EXIT_PASS
    for case in scenario_cases(s):
        rep, tried = resolve_index(case.path, grid_n, s.tol)
        flow = spectral_flow(case.path)
        entry = rep.to_dict()
        entry.update(spectral_flow=flow, grids_tried=tried)
        reports.append(entry)
        if not rep.resolved:
            code = max(code, EXIT_UNRESOLVED)
        elif rep.index != flow:
            code = EXIT_FAIL
    _emit({"id": s.id, "reports": reports})
    return code


def cmd_verify(args):
    if args.scenario:
        scenarios = [_scenario(a) for a in args.scenario]
        entries = run_scenarios(scenarios)
        report = campaign_report("scenarios", None, entries, sum(e["wall_time"] for e in entries))
    else:
        report = run_suite(args.suite, args.seed)
    text = report_json(report)
    if args.out:
        Path(args.out).write_text(text)
        s = report["summary"]
        print(f"{report['status']}: {s['pass']} pass, {s['fail']} fail, {s['UNRESOLVED']} UNRESOLVED -> {args.out}")
    else:
        sys.stdout.write(text)
    return exit_code(report)


def cmd_trace(args):
    s = _scenario(args.scenario)
    cases = scenario_cases(s)
    if len(cases) != 1:
        raise ValidationError("path", "trace needs a scenario with a single explicit path")
    trace = branch_trace(cases[0].path, args.grid_n)
    side = args.crossings or str(Path(args.csv).with_suffix("")) + ".crossings.csv"
    trace.write_csv(args.csv, side)
    print(f"{len(trace.grid)} samples, {len(trace.labels)} branches, net crossings {trace.net_crossings:+d} -> {args.csv}, {side}")
    return EXIT_PASS


def build_parser():
    p = argparse.ArgumentParser(prog="specflow", description="Spectral flow and numerical Fredholm indices of Hessian paths.")
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("flow", help="spectral flow of the scenario path(s)")
    f.add_argument("scenario")
    f.set_defaults(func=cmd_flow)

    i = sub.add_parser("index", help="numeric index of the augmented operator")
    i.add_argument("scenario")
    i.add_argument("--grid-n", type=int, default=None)
    i.set_defaults(func=cmd_index)

    v = sub.add_parser("verify", help="run a verification suite or scenario files")
    v.add_argument("--suite", choices=("axioms", "full"), default="full")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--out", default=None)
    v.add_argument("--scenario", action="append", default=None, help="run these scenarios instead of a suite")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("trace", help="write eigenvalue branches as CSV")
    t.add_argument("scenario")
    t.add_argument("--csv", required=True)
    t.add_argument("--crossings", default=None, help="crossings sidecar (default: <csv stem>.crossings.csv)")
    t.add_argument("--grid-n", type=int, default=401, help="number of sample times")
    t.set_defaults(func=cmd_trace)

    sub.add_parser("builtins", help="list builtin scenarios").set_defaults(func=lambda a: print("\n".join(builtin_ids())) or 0)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"invalid scenario: {exc}", file=sys.stderr)
    except KeyError as exc:
        print(exc.args[0] if exc.args else exc, file=sys.stderr)
    except (SpecflowError, OSError) as exc:
        print(exc, file=sys.stderr)
    return EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
