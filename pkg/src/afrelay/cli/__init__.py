"""Command-line front end: point evaluation, SNR sweeps and the validation audit."""

from .audit import AuditConfig, AuditReport, CheckResult, Finding, mc_tolerance, run_audit
from .main import build_parser, main
from .sweeps import (
    FIG2_COLUMNS,
    FIG3_COLUMNS,
    PointResult,
    SweepResult,
    SweepSpec,
    evaluate_point,
    fig2_rows,
    fig3_rows,
)

__all__ = [
    "main",
    "build_parser",
    # Sweeps
    "SweepSpec",
    "SweepResult",
    "PointResult",
    "evaluate_point",
    "fig2_rows",
    "fig3_rows",
    "FIG2_COLUMNS",
    "FIG3_COLUMNS",
    # Audit
    "AuditConfig",
    "AuditReport",
    "CheckResult",
    "Finding",
    "mc_tolerance",
    "run_audit",
]
