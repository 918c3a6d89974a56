"""Exact branch-and-bound over the LP relaxation of an IpModel.

Node selection is best-bound; branching picks the most-fractional
binary with lowest-index tie-break; incumbents come from integral LP
relaxations and a rounding dive heuristic.  The returned certificate
states whether the result is globally optimal, feasible with a bound
gap, infeasible, unbounded, or cut short by limits.

The solver works on an equivalent reduction of the model: variables
fixed by their bounds (e.g. short contacts eliminated by the
minimum-duration rule) are substituted out, rows that no remaining
assignment can violate are dropped, and binary implications derived
from big-M rows both strengthen the LP relaxation (as ``x_i <= x_j``
cuts) and propagate branching decisions.  None of this touches the
model object itself: exports and the independent audit see the
original rows.
"""
from __future__ import annotations

import heapq
import math
import time
from dataclasses import dataclass

import numpy as np
from scipy import sparse
from scipy.optimize import linprog

from ..formulation import IpModel
from .simplex import LpResult, NumericalError, solve_lp

INTEGRALITY_TOL = 1e-6
OPTIMALITY_GAP = 1e-6
#: Incumbent cutoff slack, relative; tighter than the reported gap so
#: optima agree with exhaustive enumeration at the 1e-6 comparison.
CUTOFF_EPS = 1e-9


@dataclass(frozen=True, slots=True)
class SolveLimits:
    time_s: float = 300.0
    nodes: int = 2_000_000
    rel_gap: float = OPTIMALITY_GAP


@dataclass(frozen=True, slots=True)
class Certificate:
    status: str       # Optimal | FeasibleWithGap | Infeasible | Unbounded | LimitReached
    best_objective: float | None
    best_bound: float
    relative_gap: float
    nodes_explored: int
    wall_time: float
    model_flags: tuple[str, ...] = ()


@dataclass(frozen=True, slots=True)
class MissionMetrics:
    """Mission-level quantities recomputed from a solution assignment."""

    total_mission_cost: float
    total_data_downlink: float
    max_gap_overall: float
    max_gap_by_satellite: dict[int, float]
    boundary_gap_by_satellite: dict[int, tuple[float, float]]
    monthly_operational_cost: float
    contacts_per_day: float


@dataclass(frozen=True, slots=True)
class Solution:
    assignment: dict[int, float]
    certificate: Certificate
    selected_contacts: tuple[int, ...] = ()
    selected_locations: tuple[int, ...] = ()
    selected_providers: tuple[int, ...] = ()
    metrics: MissionMetrics | None = None


class _Compiled:
    """Equivalent reduced arrays for one model, shared by every node.

    Node relaxations go to the sparse HiGHS backend (via scipy) by
    default; the embedded dense simplex is used when asked for
    explicitly or when scipy's solver is unavailable.
    """

    def __init__(self, model: IpModel, strengthen: bool = True,
                 lp_backend: str = "auto"):
        self.model = model
        n_full = len(model.variables)
        full_lower = np.array([v.lower for v in model.variables])
        full_upper = np.array([v.upper for v in model.variables])
        full_binary = np.array([v.is_binary for v in model.variables])
        full_obj = np.zeros(n_full)
        for idx, coeff in model.objective_terms:
            full_obj[idx] += coeff
        self.maximize = model.objective_sense == "max"

        self.fixed_mask = full_lower >= full_upper - 1e-12
        self.fixed_values = np.where(self.fixed_mask, full_lower, 0.0)
        self.free_idx = np.flatnonzero(~self.fixed_mask)
        self.full_to_free = {int(f): k for k, f in enumerate(self.free_idx)}
        n = self.free_idx.size
        self.n = n
        self.n_full = n_full
        self.lower = full_lower[self.free_idx]
        self.upper = full_upper[self.free_idx]
        self.is_binary = full_binary[self.free_idx]
        self.obj = full_obj[self.free_idx]
        self.fixed_objective = float(full_obj[self.fixed_mask]
                                     @ self.fixed_values[self.fixed_mask])

        rows, senses, rhs = [], [], []
        reduced_terms = []
        self.infeasible_tag: str | None = None
        for con in model.constraints:
            terms = []
            shift = 0.0
            for idx, coeff in con.terms:
                if self.fixed_mask[idx]:
                    shift += coeff * self.fixed_values[idx]
                else:
                    terms.append((self.full_to_free[idx], coeff))
            b = con.rhs - shift
            lo_lhs = sum(c * (self.lower[i] if c > 0 else self.upper[i])
                         for i, c in terms)
            hi_lhs = sum(c * (self.upper[i] if c > 0 else self.lower[i])
                         for i, c in terms)
            scale = max(1.0, abs(b),
                        max((abs(c) for _, c in terms), default=1.0))
            tol = 1e-9 * scale
            if con.sense == "<=":
                if lo_lhs > b + tol:
                    self.infeasible_tag = con.tag
                if hi_lhs <= b + tol:
                    continue          # no assignment can violate this row
            elif con.sense == ">=":
                if hi_lhs < b - tol:
                    self.infeasible_tag = con.tag
                if lo_lhs >= b - tol:
                    continue
            else:
                if lo_lhs > b + tol or hi_lhs < b - tol:
                    self.infeasible_tag = con.tag
                if lo_lhs >= b - tol and hi_lhs <= b + tol:
                    continue
            if not terms:
                continue
            reduced_terms.append((terms, con.sense, b))

        self.floor_rows = [
            (terms, b) for terms, sense, b in reduced_terms
            if sense == ">=" and b > 1e-9
            and all(self.is_binary[i] and c > 0 for i, c in terms)]

        self.implications = []
        if strengthen:
            self.implications = _derive_implications(
                reduced_terms, self.is_binary)
            kinds = [model.variables[int(f)].kind for f in self.free_idx]
            for cover in _cover_cuts(self.floor_rows, self.implications, kinds):
                reduced_terms.append(([(i, 1.0) for i in cover], ">=", 1.0))
            for terms, b in self.floor_rows:
                k_min = _min_members(terms, b)
                if 1 <= k_min < len(terms):
                    reduced_terms.append(
                        ([(i, 1.0) for i, _ in terms], ">=", float(k_min)))
            for clique in _clique_cuts(reduced_terms, self.is_binary):
                reduced_terms.append(
                    ([(i, 1.0) for i in clique], "<=", 1.0))
            for i, j in self.implications:
                reduced_terms.append(([(i, 1.0), (j, -1.0)], "<=", 0.0))

        # Row-equilibrated sparse blocks: inequalities as <= (>= rows are
        # negated), equalities separate -- the layout HiGHS consumes.
        ub_rows, ub_vals, ub_cols, ub_rhs = [], [], [], []
        eq_rows, eq_vals, eq_cols, eq_rhs = [], [], [], []
        self.reduced_rows = []
        for terms, sense, b in reduced_terms:
            scale = max((abs(c) for _, c in terms), default=1.0)
            flip = -1.0 if sense == ">=" else 1.0
            target = (eq_rows, eq_vals, eq_cols, eq_rhs) if sense == "=" \
                else (ub_rows, ub_vals, ub_cols, ub_rhs)
            t_rows, t_vals, t_cols, t_rhs = target
            row_no = len(t_rhs)
            for i, coeff in terms:
                t_rows.append(row_no)
                t_cols.append(i)
                t_vals.append(flip * coeff / scale)
            t_rhs.append(flip * b / scale)
            self.reduced_rows.append((terms, sense, b))

        self.a_ub = sparse.csr_matrix(
            (ub_vals, (ub_rows, ub_cols)), shape=(len(ub_rhs), n))
        self.b_ub = np.array(ub_rhs)
        self.a_eq_sp = sparse.csr_matrix(
            (eq_vals, (eq_rows, eq_cols)), shape=(len(eq_rhs), n))
        self.b_eq = np.array(eq_rhs)
        self.lp_backend = lp_backend
        self._dense = None

        # Mission-scale data objectives reach ~1e14; solve with a
        # power-of-two rescaling (exact in floating point) so the LP
        # backend sees unit-scale costs.
        peak = float(np.max(np.abs(self.obj))) if n else 0.0
        self.obj_scale = 2.0 ** math.ceil(math.log2(peak)) if peak > 1e6 else 1.0
        self.obj_scaled = self.obj / self.obj_scale

        fwd: dict[int, list[int]] = {}
        back: dict[int, list[int]] = {}
        for i, j in self.implications:
            fwd.setdefault(i, []).append(j)
            back.setdefault(j, []).append(i)
        self.implies_up = fwd        # x_i = 1 forces these to 1
        self.implies_down = back     # x_j = 0 forces these to 0

    def _dense_arrays(self):
        if self._dense is None:
            if len(self.reduced_rows) * max(self.n, 1) > 8_000_000:
                raise NumericalError(
                    "model too large for the embedded dense LP backend; "
                    "use the default backend")
            a = np.zeros((len(self.reduced_rows), self.n))
            senses, rhs = [], []
            for r, (terms, sense, b) in enumerate(self.reduced_rows):
                scale = max((abs(c) for _, c in terms), default=1.0)
                for i, coeff in terms:
                    a[r, i] = coeff / scale
                senses.append(sense)
                rhs.append(b / scale)
            self._dense = (a, senses, np.array(rhs))
        return self._dense

    def solve_relaxation(self, lower, upper) -> LpResult:
        if self.lp_backend == "own":
            a, senses, rhs = self._dense_arrays()
            res = solve_lp(self.obj_scaled, a, senses, rhs, lower, upper,
                           maximize=self.maximize)
            if res.objective is not None:
                res.objective = res.objective * self.obj_scale \
                    + self.fixed_objective
            return res
        c = -self.obj_scaled if self.maximize else self.obj_scaled
        res = linprog(
            c,
            A_ub=self.a_ub if self.b_ub.size else None,
            b_ub=self.b_ub if self.b_ub.size else None,
            A_eq=self.a_eq_sp if self.b_eq.size else None,
            b_eq=self.b_eq if self.b_eq.size else None,
            bounds=np.column_stack((lower, upper)),
            method="highs")
        if res.status == 2:
            return LpResult("infeasible", None, None, int(res.nit))
        if res.status == 3:
            return LpResult("unbounded", None, None, int(res.nit))
        if res.status != 0:
            raise NumericalError(f"LP backend failure: {res.message}")
        obj = float(res.fun) * self.obj_scale
        if self.maximize:
            obj = -obj
        return LpResult("optimal", obj + self.fixed_objective,
                        np.asarray(res.x), int(res.nit))

    def expand(self, x_reduced: np.ndarray) -> np.ndarray:
        x = self.fixed_values.copy()
        x[self.free_idx] = x_reduced
        return x


def _min_members(terms, b) -> int:
    """Fewest members of a positive-coefficient floor row that can reach
    the right-hand side (a valid cardinality bound for integer points)."""
    total = 0.0
    for k, coeff in enumerate(sorted((c for _, c in terms), reverse=True),
                              start=1):
        total += coeff
        if total >= b - 1e-9:
            return k
    return len(terms) + 1


def _cover_cuts(floor_rows, implications, kinds):
    """Implied covering rows, valid for every integer point.

    A row ``sum(a_i x_i) >= b`` with positive coefficients and b > 0
    forces some member to 1, which in turn forces each of that member's
    implication ancestors to 1.  Grouping ancestors by variable kind
    (location, license, provider) yields ``sum(ancestors) >= 1`` rows
    that carry the member's fixed costs into the LP relaxation.
    """
    up: dict[int, list[int]] = {}
    for i, j in implications:
        up.setdefault(i, []).append(j)

    closure: dict[int, set[int]] = {}

    def ancestors(i: int) -> set[int]:
        got = closure.get(i)
        if got is None:
            got = {i}
            stack = [i]
            while stack:
                k = stack.pop()
                for nxt in up.get(k, ()):
                    if nxt not in got:
                        got.add(nxt)
                        stack.append(nxt)
            closure[i] = got
        return got

    seen: set[frozenset[int]] = set()
    cuts = []
    for terms, _b in floor_rows:
        for kind in ("location", "vehicle_license", "provider"):
            targets: set[int] = set()
            ok = True
            for i, _c in terms:
                mine = {a for a in ancestors(i) if kinds[a] == kind}
                if not mine:
                    ok = False
                    break
                targets.update(mine)
            if not ok or not targets or len(targets) >= len(terms):
                continue
            key = frozenset(targets)
            if key in seen:
                continue
            seen.add(key)
            cuts.append(sorted(targets))
    return cuts


def _clique_cuts(reduced_terms, is_binary, max_cuts=4000):
    """Grow pairwise at-most-one rows into clique rows.

    Every ``x_i + x_j <= 1`` pair is a conflict edge; any clique of the
    conflict graph gives a valid ``sum <= 1`` row.  The overlap graphs
    here are interval graphs per station/satellite, so a greedy grow
    from each uncovered edge recovers the natural simultaneous-contact
    cliques.
    """
    adj: dict[int, set[int]] = {}
    edges = []
    for terms, sense, b in reduced_terms:
        if sense != "<=" or len(terms) != 2 or abs(b - 1.0) > 1e-12:
            continue
        (i, ci), (j, cj) = terms
        if ci != 1.0 or cj != 1.0 or not (is_binary[i] and is_binary[j]):
            continue
        adj.setdefault(i, set()).add(j)
        adj.setdefault(j, set()).add(i)
        edges.append((min(i, j), max(i, j)))

    covered: set[tuple[int, int]] = set()
    cliques = []
    for i, j in sorted(set(edges)):
        if (i, j) in covered:
            continue
        clique = [i, j]
        candidates = adj[i] & adj[j]
        for k in sorted(candidates):
            if all(k in adj[member] for member in clique):
                clique.append(k)
        if len(clique) >= 3:
            clique = sorted(clique)
            for a_idx in range(len(clique)):
                for b_idx in range(a_idx + 1, len(clique)):
                    covered.add((clique[a_idx], clique[b_idx]))
            cliques.append(clique)
            if len(cliques) >= max_cuts:
                break
    return cliques


def _derive_implications(reduced_terms, is_binary) -> list[tuple[int, int]]:
    """Pairs (i, j) with ``x_i <= x_j`` valid for every integer point.

    Derived from ``<=`` rows over binaries: if setting ``x_i = 1`` and
    ``x_j = 0`` already violates the row with every other variable at
    its most-permissive value, the implication holds.
    """
    pairs: set[tuple[int, int]] = set()
    for terms, sense, b in reduced_terms:
        if sense != "<=" or not terms:
            continue
        if any(not is_binary[i] for i, _ in terms):
            continue
        neg_sum = sum(min(c, 0.0) for _, c in terms)
        positives = [(i, c) for i, c in terms if c > 0]
        negatives = [(j, c) for j, c in terms if c < 0]
        if not negatives:
            continue
        for j, cj in negatives:
            slack_wo_j = neg_sum - cj
            for i, ci in positives:
                if ci + slack_wo_j > b + 1e-9:
                    pairs.add((i, j))
    return sorted(pairs)


def _propagate(compiled: _Compiled, lower, upper, var: int, value: int) -> bool:
    """Fix reduced variable ``var`` to ``value`` and chase implications.

    Returns False when the fixings contradict existing bounds.
    """
    stack = [(var, value)]
    while stack:
        k, val = stack.pop()
        if val == 1:
            if upper[k] < 0.5:
                return False
            if lower[k] > 0.5:
                continue
            lower[k] = 1.0
            for nxt in compiled.implies_up.get(k, ()):
                stack.append((nxt, 1))
        else:
            if lower[k] > 0.5:
                return False
            if upper[k] < 0.5:
                continue
            upper[k] = 0.0
            for nxt in compiled.implies_down.get(k, ()):
                stack.append((nxt, 0))
    return True


def _most_fractional(x, is_binary, lower, upper) -> int | None:
    frac = np.abs(x - np.round(x))
    frac = np.where(is_binary & (upper - lower > 0.5), frac, -1.0)
    best = int(np.argmax(frac))
    return best if frac[best] > INTEGRALITY_TOL else None


def _repair_continuous(compiled: _Compiled, x_full: np.ndarray) -> np.ndarray | None:
    """Round binaries exactly and re-derive continuous values.

    Each continuous variable is pushed to the value its rows allow that
    the objective prefers (there is at most one in practice: the
    maximum-gap variable).  Returns None when no feasible value exists.
    """
    x = x_full.copy()
    model = compiled.model
    binary_full = np.array([v.is_binary for v in model.variables])
    x[binary_full] = np.round(x[binary_full])
    obj_full = np.zeros(len(model.variables))
    for idx, coeff in model.objective_terms:
        obj_full[idx] += coeff
    for v in model.variables:
        if v.is_binary:
            continue
        k = v.index
        lo, hi = v.lower, v.upper
        for con in model.constraints:
            coeff_k = next((c for i, c in con.terms if i == k), None)
            if not coeff_k:
                continue
            rest = math.fsum(c * x[i] for i, c in con.terms if i != k)
            bound = (con.rhs - rest) / coeff_k
            if con.sense == "<=":
                hi, lo = (min(hi, bound), lo) if coeff_k > 0 else (hi, max(lo, bound))
            elif con.sense == ">=":
                lo, hi = (max(lo, bound), hi) if coeff_k > 0 else (lo, min(hi, bound))
            else:
                lo, hi = max(lo, bound), min(hi, bound)
        if lo > hi + 1e-6:
            return None
        x[k] = lo if (obj_full[k] >= 0) != compiled.maximize else hi
        x[k] = min(max(x[k], v.lower), v.upper)
    return x


def _raw_feasible(compiled: _Compiled, x_full: np.ndarray) -> bool:
    """Feasibility of the original (unstrengthened) rows at 1e-6 on the
    row coefficient scale, plus bound checks."""
    model = compiled.model
    for v in model.variables:
        if x_full[v.index] < v.lower - 1e-9 or x_full[v.index] > v.upper + 1e-9:
            return False
    for con in model.constraints:
        lhs = math.fsum(c * x_full[i] for i, c in con.terms)
        scale = max(1.0, max((abs(c) for _, c in con.terms), default=1.0),
                    abs(con.rhs))
        resid = lhs - con.rhs
        if con.sense == "<=" and resid > 1e-6 * scale:
            return False
        if con.sense == ">=" and resid < -1e-6 * scale:
            return False
        if con.sense == "=" and abs(resid) > 1e-6 * scale:
            return False
    return True


def _greedy_repair(compiled: _Compiled, x_red, node_lower, node_upper):
    """LP-rounding-plus-repair incumbent heuristic.

    Rounds the relaxation, pulls implications up, then greedily raises
    the cheapest binaries (counting the fixed costs their implications
    drag in) until every covering floor holds; pairwise-conflict and
    budget rows are repaired by releasing offenders.  Returns a full
    assignment or None; callers re-verify feasibility independently.
    """
    # Equality rows over binaries (successor structure) need a matching,
    # not a rounding; let plain branch-and-bound handle those models.
    for terms, sense, _b in compiled.reduced_rows:
        if sense == "=" and all(compiled.is_binary[i] for i, _ in terms):
            return None

    x = np.where(compiled.is_binary, np.round(x_red), x_red)
    x = np.clip(x, node_lower, node_upper)
    internal_obj = -compiled.obj if compiled.maximize else compiled.obj

    def set_one(i: int) -> bool:
        stack = [i]
        while stack:
            k = stack.pop()
            if x[k] > 0.5:
                continue
            if node_upper[k] < 0.5:
                return False
            x[k] = 1.0
            stack.extend(compiled.implies_up.get(k, ()))
        return True

    def unset(j: int) -> bool:
        stack = [j]
        while stack:
            k = stack.pop()
            if x[k] < 0.5:
                continue
            if node_lower[k] > 0.5:
                return False
            x[k] = 0.0
            stack.extend(compiled.implies_down.get(k, ()))
        return True

    def marginal_cost(i: int) -> float:
        total, stack, seen = 0.0, [i], set()
        while stack:
            k = stack.pop()
            if k in seen or x[k] > 0.5:
                continue
            seen.add(k)
            total += internal_obj[k]
            stack.extend(compiled.implies_up.get(k, ()))
        return total

    for i in np.flatnonzero((x > 0.5) & compiled.is_binary):
        if not set_one(int(i)):
            return None

    for _ in range(3):
        clean = True
        for terms, b in compiled.floor_rows:
            guard = 0
            lhs = sum(c * x[i] for i, c in terms)
            while lhs < b - 1e-9:
                clean = False
                cands = [(i, c) for i, c in terms
                         if x[i] < 0.5 and node_upper[i] > 0.5]
                if not cands:
                    return None
                best = min(cands, key=lambda ic: (
                    marginal_cost(ic[0]) / ic[1], ic[0]))
                if not set_one(best[0]):
                    return None
                lhs = sum(c * x[i] for i, c in terms)
                guard += 1
                if guard > len(terms):
                    return None
        for terms, sense, b in compiled.reduced_rows:
            if sense != "<=":
                continue
            lhs = sum(c * x[i] for i, c in terms)
            scale = max((abs(c) for _, c in terms), default=1.0)
            guard = 0
            while lhs > b + 1e-9 * max(1.0, scale):
                clean = False
                on = [(i, c) for i, c in terms
                      if c > 0 and x[i] > 0.5 and compiled.is_binary[i]
                      and node_lower[i] < 0.5]
                if not on:
                    return None
                # Release the member with the worst internal objective
                # per unit of relief (for maximization that is the
                # least-valuable member).
                worst = max(on, key=lambda ic: (
                    internal_obj[ic[0]] / ic[1], -ic[0]))
                if not unset(worst[0]):
                    return None
                lhs = sum(c * x[i] for i, c in terms)
                guard += 1
                if guard > len(terms):
                    return None
        if clean:
            break

    def reduced_ok() -> bool:
        for terms, sense, b in compiled.reduced_rows:
            lhs = sum(c * x[i] for i, c in terms)
            scale = max(1.0, max((abs(c) for _, c in terms), default=1.0))
            if sense == "<=" and lhs > b + 1e-9 * scale:
                return False
            if sense == ">=" and lhs < b - 1e-9 * scale:
                return False
            if sense == "=" and abs(lhs - b) > 1e-9 * scale:
                return False
        return True

    if not reduced_ok():
        return None

    # Peel pass: drop selections the floors do not actually need,
    # most expensive (or least valuable) first.
    on = [int(i) for i in np.flatnonzero((x > 0.5) & compiled.is_binary)
          if node_lower[i] < 0.5]
    on.sort(key=lambda i: (-internal_obj[i], i))
    for i in on:
        if x[i] < 0.5 or internal_obj[i] <= 0.0:
            continue
        saved = x.copy()
        if not unset(i):
            continue
        if not reduced_ok():
            x = saved

    candidate = _repair_continuous(compiled, compiled.expand(x))
    if candidate is not None and _raw_feasible(compiled, candidate):
        return candidate
    return None


def _dive(compiled: _Compiled, lower, upper, max_solves=60):
    """Rounding dive from the relaxation toward an integral incumbent."""
    lower = lower.copy()
    upper = upper.copy()
    for _ in range(max_solves):
        res = compiled.solve_relaxation(lower, upper)
        if res.status != "optimal":
            return None
        k = _most_fractional(res.x, compiled.is_binary, lower, upper)
        if k is None:
            candidate = _repair_continuous(compiled, compiled.expand(res.x))
            if candidate is not None and _raw_feasible(compiled, candidate):
                return candidate
            return None
        value = int(round(res.x[k]))
        if not _propagate(compiled, lower, upper, k, value):
            return None
    return None


def solve(model: IpModel, limits: SolveLimits | None = None,
          strengthen: bool = True, lp_backend: str = "auto") -> Solution:
    """Solve the integer program exactly (within the stated gap).

    Deterministic for a fixed model, limits, and backend; ``wall_time``
    is the only certificate field that varies between runs.
    """
    limits = limits or SolveLimits()
    t_start = time.perf_counter()
    compiled = _Compiled(model, strengthen=strengthen, lp_backend=lp_backend)
    sign = -1.0 if compiled.maximize else 1.0     # internal minimization
    const = model.objective_constant
    obj_full = np.zeros(len(model.variables))
    for idx, coeff in model.objective_terms:
        obj_full[idx] += coeff

    def finish(status, best_x_full, best_obj, bound, nodes):
        wall = time.perf_counter() - t_start
        if best_obj is not None and math.isfinite(bound):
            gap = abs(best_obj - bound) / max(1.0, abs(best_obj))
        else:
            gap = math.inf
        cert = Certificate(
            status=status,
            best_objective=None if best_obj is None else best_obj + const,
            best_bound=bound + const if math.isfinite(bound) else bound,
            relative_gap=gap,
            nodes_explored=nodes,
            wall_time=wall,
            model_flags=model.flags)
        assignment = {}
        sel_c, sel_l, sel_p = [], [], []
        if best_x_full is not None:
            for v in model.variables:
                val = float(best_x_full[v.index])
                if v.is_binary:
                    val = float(round(val))
                assignment[v.index] = val
                if val > 0.5 and v.meta:
                    if v.kind == "contact":
                        sel_c.append(v.meta[1])
                    elif v.kind == "location":
                        sel_l.append(v.meta[1])
                    elif v.kind == "provider":
                        sel_p.append(v.meta[1])
        return Solution(
            assignment=assignment, certificate=cert,
            selected_contacts=tuple(sorted(sel_c)),
            selected_locations=tuple(sorted(sel_l)),
            selected_providers=tuple(sorted(sel_p)))

    inf_bound = math.inf if not compiled.maximize else -math.inf
    if compiled.infeasible_tag is not None:
        return finish("Infeasible", None, None, inf_bound, 0)

    root = compiled.solve_relaxation(compiled.lower, compiled.upper)
    if root.status == "infeasible":
        return finish("Infeasible", None, None, inf_bound, 1)
    if root.status == "unbounded":
        return finish("Unbounded", None, None, -inf_bound, 1)

    incumbent_full = None
    incumbent_int = math.inf            # internal (minimization) objective

    def offer(candidate_full):
        nonlocal incumbent_full, incumbent_int
        if candidate_full is None:
            return
        cand_int = sign * float(obj_full @ candidate_full)
        if cand_int < incumbent_int:
            incumbent_full = candidate_full
            incumbent_int = cand_int

    offer(_greedy_repair(compiled, root.x, compiled.lower, compiled.upper))
    offer(_dive(compiled, compiled.lower, compiled.upper))

    seq = 0
    heap = [(sign * root.objective, seq, compiled.lower.copy(),
             compiled.upper.copy())]
    nodes = 0
    best_bound_int = sign * root.objective

    def cutoff():
        return incumbent_int - CUTOFF_EPS * max(1.0, abs(incumbent_int))

    hit_limit = False
    while heap:
        if nodes >= limits.nodes or \
                time.perf_counter() - t_start > limits.time_s:
            hit_limit = True
            break
        bound_int, _, node_lower, node_upper = heapq.heappop(heap)
        best_bound_int = bound_int
        if incumbent_full is not None and bound_int >= cutoff():
            # Best-bound order: every remaining node is no better.
            best_bound_int = incumbent_int
            heap.clear()
            break
        res = compiled.solve_relaxation(node_lower, node_upper)
        nodes += 1
        if res.status == "infeasible":
            continue
        if res.status == "unbounded":
            return finish("Unbounded", None, None, -inf_bound, nodes)
        node_obj_int = sign * res.objective
        if incumbent_full is not None and node_obj_int >= cutoff():
            continue
        branch_var = _most_fractional(res.x, compiled.is_binary,
                                      node_lower, node_upper)
        if branch_var is None:
            candidate = _repair_continuous(compiled, compiled.expand(res.x))
            if candidate is not None and _raw_feasible(compiled, candidate):
                offer(candidate)
            continue
        if nodes % 25 == 1:
            offer(_greedy_repair(compiled, res.x, node_lower, node_upper))
        for value in (0, 1):
            child_lower = node_lower.copy()
            child_upper = node_upper.copy()
            if not _propagate(compiled, child_lower, child_upper,
                              branch_var, value):
                continue
            seq += 1
            heapq.heappush(heap, (node_obj_int, seq, child_lower, child_upper))

    if hit_limit:
        remaining = min((entry[0] for entry in heap), default=incumbent_int)
        best_bound_int = min(best_bound_int, remaining)
        return finish("LimitReached", incumbent_full,
                      None if incumbent_full is None else incumbent_int * sign,
                      best_bound_int * sign, nodes)

    if incumbent_full is None:
        return finish("Infeasible", None, None, inf_bound, nodes)

    # Natural exhaustion: every subtree was resolved or cut off within
    # CUTOFF_EPS of the incumbent, so the incumbent is the bound.
    best_bound_int = incumbent_int
    gap = abs(incumbent_int - best_bound_int) / max(1.0, abs(incumbent_int))
    status = "Optimal" if gap <= OPTIMALITY_GAP else "FeasibleWithGap"
    return finish(status, incumbent_full, incumbent_int * sign,
                  best_bound_int * sign, nodes)


def solve_lp_relaxation(model: IpModel, lp_backend: str = "own"):
    """Solve the LP relaxation of the model (integrality dropped) with
    the embedded bounded-variable revised simplex.

    Returns ``(status, objective, x)``; the primal point covers the
    model's variables in index order.
    """
    compiled = _Compiled(model, strengthen=False, lp_backend=lp_backend)
    if compiled.infeasible_tag is not None:
        return "infeasible", None, None
    res = compiled.solve_relaxation(compiled.lower, compiled.upper)
    if res.status != "optimal":
        return res.status, None, None
    return res.status, res.objective + model.objective_constant, \
        compiled.expand(res.x)
