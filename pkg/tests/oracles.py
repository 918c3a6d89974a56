"""Independent oracles used by the test suite.

These deliberately avoid the code paths they check: the integer oracle
enumerates assignments outright, and the LP oracle enumerates candidate
vertices from active-set subsets.
"""
import itertools
import math

import numpy as np


def _continuous_window(model, con_list, x, var):
    lo, hi = var.lower, var.upper
    for con in con_list:
        coeff = next((c for i, c in con.terms if i == var.index), None)
        if not coeff:
            continue
        rest = sum(c * x[i] for i, c in con.terms if i != var.index)
        bound = (con.rhs - rest) / coeff
        if con.sense == "<=":
            if coeff > 0:
                hi = min(hi, bound)
            else:
                lo = max(lo, bound)
        elif con.sense == ">=":
            if coeff > 0:
                lo = max(lo, bound)
            else:
                hi = min(hi, bound)
        else:
            lo, hi = max(lo, bound), min(hi, bound)
    return lo, hi


def enumerate_ip(model):
    """Exhaustive optimum of an IpModel with few free binaries.

    Continuous variables (at most the gap bound in practice) are set to
    the row-implied extreme the objective prefers.  Returns the optimal
    objective value or None when infeasible.
    """
    binaries = [v for v in model.variables if v.is_binary]
    conts = [v for v in model.variables if not v.is_binary]
    obj = dict(model.objective_terms)
    best = None
    choices = [(int(v.lower),) if v.lower == v.upper else (0, 1)
               for v in binaries]
    for bits in itertools.product(*choices):
        x = {v.index: float(b) for v, b in zip(binaries, bits)}
        feasible = True
        for v in conts:
            lo, hi = _continuous_window(model, model.constraints, x, v)
            if lo > hi + 1e-9:
                feasible = False
                break
            coeff = obj.get(v.index, 0.0)
            prefer_low = (coeff >= 0) != (model.objective_sense == "max")
            x[v.index] = lo if prefer_low else hi
        if not feasible:
            continue
        for con in model.constraints:
            lhs = sum(c * x[i] for i, c in con.terms)
            scale = max(1.0, abs(con.rhs),
                        max((abs(c) for _, c in con.terms), default=1.0))
            tol = 1e-9 * scale
            if con.sense == "<=" and lhs > con.rhs + tol:
                feasible = False
                break
            if con.sense == ">=" and lhs < con.rhs - tol:
                feasible = False
                break
            if con.sense == "=" and abs(lhs - con.rhs) > tol:
                feasible = False
                break
        if not feasible:
            continue
        value = sum(c * x[i] for i, c in model.objective_terms) \
            + model.objective_constant
        if best is None:
            best = value
        elif model.objective_sense == "max":
            best = max(best, value)
        else:
            best = min(best, value)
    return best


def enumerate_lp_vertices(c, a_matrix, senses, rhs, lower, upper,
                          maximize=False):
    """LP optimum by brute-force vertex enumeration.

    Candidate vertices come from every n-subset of the active-set pool
    (rows as equalities plus individual bounds).  Intended for tiny
    LPs only.
    """
    a_matrix = np.asarray(a_matrix, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    c = np.asarray(c, dtype=float)
    m, n = a_matrix.shape
    pool = []
    for r in range(m):
        pool.append((a_matrix[r], rhs[r]))
    for j in range(n):
        e = np.zeros(n)
        e[j] = 1.0
        pool.append((e, lower[j]))
        pool.append((e.copy(), upper[j]))

    def feasible(x):
        if np.any(x < lower - 1e-7) or np.any(x > upper + 1e-7):
            return False
        act = a_matrix @ x
        for r, sense in enumerate(senses):
            if sense == "<=" and act[r] > rhs[r] + 1e-7:
                return False
            if sense == ">=" and act[r] < rhs[r] - 1e-7:
                return False
            if sense == "=" and abs(act[r] - rhs[r]) > 1e-7:
                return False
        return True

    best = None
    for combo in itertools.combinations(range(len(pool)), n):
        a_sub = np.array([pool[k][0] for k in combo])
        b_sub = np.array([pool[k][1] for k in combo])
        if abs(np.linalg.det(a_sub)) < 1e-10:
            continue
        x = np.linalg.solve(a_sub, b_sub)
        if not feasible(x):
            continue
        value = float(c @ x)
        if best is None:
            best = value
        elif maximize:
            best = max(best, value)
        else:
            best = min(best, value)
    return best
