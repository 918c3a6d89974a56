"""Independent feasibility re-check of a solved assignment.

Every constraint, bound, and integrality condition is re-evaluated with
fresh arithmetic (compensated summation, no solver state).  Violations
are measured at 1e-6 on each row's own coefficient scale, matching the
equilibration the solver applies; with raw coefficients spanning from
unit weights to ~1e12 bit volumes, an unscaled absolute test would be
meaningless at both ends.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from ..formulation import IpModel

AUDIT_TOL = 1e-6


@dataclass(frozen=True, slots=True)
class Violation:
    kind: str           # "constraint" | "integrality" | "bounds"
    tag: str
    amount: float
    detail: str


def audit(model: IpModel, assignment: dict[int, float]) -> list[Violation]:
    """Return every violation exceeding tolerance; empty means clean."""
    violations: list[Violation] = []
    for v in model.variables:
        if v.index not in assignment:
            raise ValueError(f"assignment missing variable {v.tag}")
        value = assignment[v.index]
        if v.is_binary:
            drift = abs(value - round(value))
            if drift > AUDIT_TOL:
                violations.append(Violation(
                    "integrality", v.tag, drift,
                    f"{v.tag} = {value} is not integral"))
        span = max(1.0, abs(v.lower), abs(v.upper))
        if value < v.lower - AUDIT_TOL * span or value > v.upper + AUDIT_TOL * span:
            violations.append(Violation(
                "bounds", v.tag, max(v.lower - value, value - v.upper),
                f"{v.tag} = {value} outside [{v.lower}, {v.upper}]"))

    for con in model.constraints:
        lhs = math.fsum(coeff * assignment[idx] for idx, coeff in con.terms)
        scale = max(1.0, abs(con.rhs),
                    max((abs(coeff) for _, coeff in con.terms), default=1.0))
        resid = lhs - con.rhs
        bad = ((con.sense == "<=" and resid > AUDIT_TOL * scale)
               or (con.sense == ">=" and resid < -AUDIT_TOL * scale)
               or (con.sense == "=" and abs(resid) > AUDIT_TOL * scale))
        if bad:
            violations.append(Violation(
                "constraint", con.tag, abs(resid),
                f"{con.tag}: lhs {lhs} {con.sense} {con.rhs} violated"))
    return violations
