"""Embedded exact solver: LP relaxations, branch-and-bound with
optimality certificates, LP-file export, and an independent audit."""
from .audit import AUDIT_TOL, Violation, audit
from .branch_bound import (
    Certificate,
    MissionMetrics,
    Solution,
    SolveLimits,
    solve,
    solve_lp_relaxation,
)
from .lp_format import export_lp
from .simplex import LpResult, NumericalError, solve_lp

__all__ = [
    "AUDIT_TOL",
    "Certificate",
    "LpResult",
    "MissionMetrics",
    "NumericalError",
    "Solution",
    "SolveLimits",
    "Violation",
    "audit",
    "export_lp",
    "solve",
    "solve_lp",
    "solve_lp_relaxation",
]
