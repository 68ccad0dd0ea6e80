"""Scenario ingestion, verification checks and campaign reports."""

from .campaign import (
    REPORT_SCHEMA,
    builtin_ids,
    builtin_scenario,
    exit_code,
    report_json,
    run_axiom_suite,
    run_scenario,
    run_scenarios,
    run_suite,
)
from .checks import PROVENANCE, CheckResult
from .scenario import CHECKS, SCHEMA_ID, Scenario, load_scenario, parse_scenario

__all__ = [
    "CHECKS",
    "PROVENANCE",
    "REPORT_SCHEMA",
    "SCHEMA_ID",
    "CheckResult",
    "Scenario",
    "builtin_ids",
    "builtin_scenario",
    "exit_code",
    "load_scenario",
    "parse_scenario",
    "report_json",
    "run_axiom_suite",
    "run_scenario",
    "run_scenarios",
    "run_suite",
]
