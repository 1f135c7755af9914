"""Spec ingestion, the verification commands and the CLI."""

from .commands import (
    cmd_cohomology,
    cmd_count,
    cmd_global_div,
    cmd_local_div,
    cmd_mw_check,
    cmd_sha1,
    cmd_verify_paper,
    sha1_cross_check,
)
from .report import make_report, render_pretty, to_json
from .specs import CurvePair, CurveSpec, load_bundled, load_spec, parse_point_expr

__all__ = [
    "cmd_cohomology", "cmd_count", "cmd_global_div", "cmd_local_div", "cmd_mw_check", "cmd_sha1",
    "cmd_verify_paper", "sha1_cross_check", "make_report", "render_pretty", "to_json",
    "CurvePair", "CurveSpec", "load_bundled", "load_spec", "parse_point_expr",
]
