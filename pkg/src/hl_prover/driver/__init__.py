"""
Driver operations behind the command line: check, lint, bench and stats.
"""

from .bench import FORMATS, bench, format_rows
from .check import GoalOutcome, check_file, check_source, environment_diagnostics, prove_goal, prove_goals, tactic_options
from .lint import CHECKS, LintFinding, lint, malformed_name, unused_hypotheses
from .render import ReportRenderer
from .reports import (
    EXIT_FAILURE,
    EXIT_OK,
    EXIT_USAGE,
    BenchRow,
    CheckReport,
    Diagnostic,
    GoalReport,
    Severity,
    StatsReport,
)
from .stats import env_stats, file_stats

__all__ = [
    "bench",
    "format_rows",
    "FORMATS",
    "check_file",
    "check_source",
    "environment_diagnostics",
    "prove_goal",
    "prove_goals",
    "tactic_options",
    "GoalOutcome",
    "lint",
    "malformed_name",
    "unused_hypotheses",
    "LintFinding",
    "CHECKS",
    "ReportRenderer",
    "EXIT_OK",
    "EXIT_FAILURE",
    "EXIT_USAGE",
    "BenchRow",
    "CheckReport",
    "Diagnostic",
    "GoalReport",
    "Severity",
    "StatsReport",
    "env_stats",
    "file_stats",
]
