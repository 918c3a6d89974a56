"""CPLEX-LP text export so models can be handed to external solvers.

The format has no objective constant; a nonzero constant is emitted as
a leading comment.  Constraint names are the model tags with characters
outside ``[A-Za-z0-9_]`` folded to underscores.
"""
from __future__ import annotations

import re

from ..formulation import IpModel


def _name(tag: str) -> str:
    return re.sub(r"[^A-Za-z0-9_]+", "_", tag).strip("_")


def _coeff(value: float) -> str:
    return repr(float(value))


def _terms_text(terms, variables) -> str:
    parts = []
    for k, (idx, coeff) in enumerate(terms):
        sign = "-" if coeff < 0 else ("+" if k else "")
        parts.append(f"{sign} {_coeff(abs(coeff))} {variables[idx].tag}"
                     if sign else f"{_coeff(abs(coeff))} {variables[idx].tag}")
    return " ".join(parts) if parts else "0 " + variables[0].tag


def export_lp(model: IpModel, path) -> None:
    """Write the model in CPLEX LP text format."""
    lines = ["\\ ground-station selection model"]
    if model.variant:
        lines.append(f"\\ variant: {model.variant}")
    if model.objective_constant:
        lines.append(f"\\ objective constant: {_coeff(model.objective_constant)}"
                     " (LP format cannot express constants)")
    lines.append("Maximize" if model.objective_sense == "max" else "Minimize")
    lines.append(f" obj: {_terms_text(model.objective_terms, model.variables)}")
    lines.append("Subject To")
    sense_text = {"<=": "<=", ">=": ">=", "=": "="}
    for con in model.constraints:
        lines.append(f" {_name(con.tag)}: "
                     f"{_terms_text(con.terms, model.variables)} "
                     f"{sense_text[con.sense]} {_coeff(con.rhs)}")
    lines.append("Bounds")
    for v in model.variables:
        if v.is_binary:
            if v.lower == v.upper:
                lines.append(f" {v.tag} = {_coeff(v.lower)}")
        else:
            lines.append(f" {_coeff(v.lower)} <= {v.tag} <= {_coeff(v.upper)}")
    binaries = [v.tag for v in model.variables if v.is_binary]
    if binaries:
        lines.append("Binaries")
        for start in range(0, len(binaries), 12):
            lines.append(" " + " ".join(binaries[start:start + 12]))
    generals = [v.tag for v in model.variables
                if not v.is_binary and v.integrality not in ("continuous",)]
    if generals:
        lines.append("Generals")
        lines.append(" " + " ".join(generals))
    lines.append("End")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
