"""Dense revised simplex for linear programs with bounded variables.

Two-phase method: artificial variables are introduced only for rows
whose slack cannot absorb the initial residual, driven to zero, then
frozen.  The basis is held as an LU factorization plus a product-form
eta file, refreshed every few dozen pivots; FTRAN/BTRAN solves go
through the factors, which stays numerically honest under the heavy
degeneracy these models produce.  Dantzig pricing switches to Bland's
rule under stalling; the ratio test prefers well-conditioned pivots
among ties.  If a solve still breaks down it is retried once with
conservative settings before reporting a numerical error.

Rows are expected pre-equilibrated (scaled so max |coefficient| is
about 1); tolerances are applied on that scale.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import lu_factor, lu_solve

FEAS_TOL = 1e-7
DUAL_TOL = 1e-7
#: Minimum |pivot| for a row to enter the ratio test.
PIVOT_TOL = 1e-7

#: Iterations without objective progress before switching to Bland's rule.
STALL_LIMIT = 80


class NumericalError(RuntimeError):
    """The solve broke down numerically; never a silent wrong answer."""


@dataclass(slots=True)
class LpResult:
    status: str                 # "optimal" | "infeasible" | "unbounded"
    objective: float | None
    x: np.ndarray | None        # structural variable values
    iterations: int


def solve_lp(c, a_matrix, senses, rhs, lower, upper, maximize=False) -> LpResult:
    """Solve ``opt c'x  s.t.  A x {<=,>=,=} b,  lower <= x <= upper``.

    ``senses`` is a sequence of ``"<="``, ``">="``, ``"="`` per row.
    Structural bounds must be finite.  Returns structural values only.
    """
    c = np.asarray(c, dtype=float)
    a_matrix = np.asarray(a_matrix, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    m = a_matrix.shape[0] if a_matrix.size else 0

    if not (np.all(np.isfinite(lower)) and np.all(np.isfinite(upper))):
        raise ValueError("structural variable bounds must be finite")
    if np.any(lower > upper + 1e-12):
        return LpResult("infeasible", None, None, 0)

    if m == 0:
        x = np.where((c >= 0) != maximize, lower, upper)
        obj = float(c @ x)
        return LpResult("optimal", obj, x, 0)

    sign = -1.0 if maximize else 1.0
    try:
        core = _SimplexCore(sign * c, a_matrix, senses, rhs, lower, upper)
        status, iterations = core.run()
    except NumericalError:
        # One conservative retry: tighter refactorization cadence.
        core = _SimplexCore(sign * c, a_matrix, senses, rhs, lower, upper,
                            refactor_every=8)
        status, iterations = core.run()
    if status != "optimal":
        return LpResult(status, None, None, iterations)
    x = core.structural_values()
    obj = float(c @ x)
    return LpResult("optimal", obj, x, iterations)


class _SimplexCore:
    """Columns are structurals (0..n-1), slacks (n..n+m-1), then
    artificials; slack/artificial columns are unit vectors handled
    implicitly."""

    def __init__(self, c, a_matrix, senses, rhs, lower, upper,
                 refactor_every=50):
        m, n = a_matrix.shape
        self.m, self.n = m, n
        self.a = np.ascontiguousarray(a_matrix)
        self.b = np.asarray(rhs, dtype=float)
        self.refactor_every = refactor_every

        slack_lower = np.empty(m)
        slack_upper = np.empty(m)
        for r, sense in enumerate(senses):
            if sense == "<=":
                slack_lower[r], slack_upper[r] = 0.0, np.inf
            elif sense == ">=":
                slack_lower[r], slack_upper[r] = -np.inf, 0.0
            elif sense == "=":
                slack_lower[r], slack_upper[r] = 0.0, 0.0
            else:
                raise ValueError(f"bad sense {sense!r}")

        self.total = n + m
        self.lower = np.concatenate([lower, slack_lower])
        self.upper = np.concatenate([upper, slack_upper])
        self.cost = np.concatenate([c, np.zeros(m)])
        self.art_sign = np.zeros(0)
        self.art_row = np.zeros(0, dtype=int)

        self.at_upper = np.zeros(self.total, dtype=bool)
        self.values = np.where(np.isfinite(self.lower), self.lower, 0.0)
        self.values[n:] = 0.0

        residual = self.b - self.a @ self.values[:n]
        slack_val = np.clip(residual, slack_lower, slack_upper)
        slack_val[~np.isfinite(slack_val)] = 0.0
        self.values[n:] = slack_val
        # A slack pinned at a finite upper bound (>= rows clip to zero)
        # must carry the at-upper flag or pricing walks it the wrong way.
        self.at_upper[n:] = np.isfinite(slack_upper) & (slack_val >= slack_upper)
        leftovers = residual - slack_val

        art_rows = np.flatnonzero(np.abs(leftovers) > FEAS_TOL)
        n_art = art_rows.size
        self.n_art = n_art
        self.art_start = self.total
        if n_art:
            self.art_row = art_rows.copy()
            self.art_sign = np.where(leftovers[art_rows] > 0, 1.0, -1.0)
            self.lower = np.concatenate([self.lower, np.zeros(n_art)])
            self.upper = np.concatenate([self.upper, np.full(n_art, np.inf)])
            self.cost = np.concatenate([self.cost, np.zeros(n_art)])
            self.values = np.concatenate([self.values,
                                          np.abs(leftovers[art_rows])])
            self.at_upper = np.concatenate([self.at_upper,
                                            np.zeros(n_art, dtype=bool)])
            self.total += n_art

        self.basis = np.arange(n, n + m)
        for k, r in enumerate(art_rows):
            self.basis[r] = self.art_start + k
        self.in_basis = np.zeros(self.total, dtype=bool)
        self.in_basis[self.basis] = True
        self.lu = None
        self.etas: list[tuple[int, np.ndarray]] = []
        self._refactor()

    # --- basis factorization ---------------------------------------------------

    def _column(self, j: int) -> np.ndarray:
        col = np.zeros(self.m)
        if j < self.n:
            return self.a[:, j]
        if j < self.art_start:
            col[j - self.n] = 1.0
            return col
        k = j - self.art_start
        col[self.art_row[k]] = self.art_sign[k]
        return col

    def _refactor(self):
        basis_matrix = np.empty((self.m, self.m))
        for i, j in enumerate(self.basis):
            basis_matrix[:, i] = self._column(int(j))
        self.lu = lu_factor(basis_matrix, check_finite=False)
        diag = np.abs(np.diag(self.lu[0]))
        if diag.min() <= 1e-12 * max(1.0, diag.max()):
            raise NumericalError("basis numerically singular at refactorization")
        self.etas = []
        self._recompute_basics()

    def _ftran(self, col: np.ndarray) -> np.ndarray:
        u = lu_solve(self.lu, col, check_finite=False)
        for r, w in self.etas:
            ur = u[r] / w[r]
            u -= w * ur
            u[r] = ur
        return u

    def _btran(self, cb: np.ndarray) -> np.ndarray:
        v = cb.copy()
        for r, w in reversed(self.etas):
            vr = (v[r] - (v @ w - v[r] * w[r])) / w[r]
            v[r] = vr
        return lu_solve(self.lu, v, trans=1, check_finite=False)

    def _recompute_basics(self):
        nonbasic = ~self.in_basis
        struct = np.flatnonzero(nonbasic[:self.n])
        contrib = self.a[:, struct] @ self.values[struct]
        slack_nb = np.flatnonzero(nonbasic[self.n:self.art_start])
        contrib[slack_nb] += self.values[self.n + slack_nb]
        for k in range(self.n_art):
            j = self.art_start + k
            if nonbasic[j]:
                contrib[self.art_row[k]] += self.art_sign[k] * self.values[j]
        self.values[self.basis] = self._ftran(self.b - contrib)

    # --- the iteration loop ------------------------------------------------------

    def run(self):
        iterations = 0
        if self.n_art:
            phase_cost = np.zeros(self.total)
            phase_cost[self.art_start:] = 1.0
            status, it = self._iterate(phase_cost)
            iterations += it
            if status != "optimal":
                raise NumericalError(f"phase-1 terminated with {status}")
            infeas = float(np.sum(self.values[self.art_start:]))
            if infeas > 1e-6:
                return "infeasible", iterations
            # Freeze artificials at zero; they may linger in the basis
            # degenerately but can never move again.
            self.upper[self.art_start:] = 0.0
            self.values[self.art_start:] = 0.0
            self._recompute_basics()

        status, it = self._iterate(self.cost)
        return status, iterations + it

    def _reduced_costs(self, cost):
        duals = self._btran(cost[self.basis])
        reduced = np.empty(self.total)
        reduced[:self.n] = cost[:self.n] - duals @ self.a
        reduced[self.n:self.art_start] = cost[self.n:self.art_start] - duals
        if self.n_art:
            reduced[self.art_start:] = cost[self.art_start:] \
                - self.art_sign * duals[self.art_row]
        return reduced

    def _iterate(self, cost):
        iterations = 0
        stall = 0
        bland = False
        last_obj = np.inf
        max_iter = 20000 + 200 * (self.m + self.n)
        restarts = 0

        while True:
            iterations += 1
            if iterations > max_iter:
                raise NumericalError("iteration limit exceeded; "
                                     "possible numerical cycling")
            if len(self.etas) >= self.refactor_every:
                self._refactor()

            reduced = self._reduced_costs(cost)
            movable = ~self.in_basis & (self.upper - self.lower > 1e-12)
            eligible = movable & np.where(
                self.at_upper, reduced > DUAL_TOL, reduced < -DUAL_TOL)
            if not np.any(eligible):
                return "optimal", iterations

            if bland:
                entering = int(np.flatnonzero(eligible)[0])
            else:
                scores = np.where(eligible, np.abs(reduced), -1.0)
                entering = int(np.argmax(scores))
            sigma = -1.0 if self.at_upper[entering] else 1.0

            w = self._ftran(self._column(entering))
            xb = self.values[self.basis]
            lo_b = self.lower[self.basis]
            up_b = self.upper[self.basis]
            step_dir = -sigma * w
            ratios = np.full(self.m, np.inf)
            pos = step_dir > PIVOT_TOL
            neg = step_dir < -PIVOT_TOL
            with np.errstate(invalid="ignore", divide="ignore"):
                ratios[pos] = (up_b[pos] - xb[pos]) / step_dir[pos]
                ratios[neg] = (lo_b[neg] - xb[neg]) / step_dir[neg]
            ratios = np.maximum(ratios, 0.0)

            t_flip = self.upper[entering] - self.lower[entering]
            r_min = float(np.min(ratios)) if self.m else np.inf
            t_star = min(t_flip, r_min)
            if not np.isfinite(t_star):
                return "unbounded", iterations

            pivoting = r_min < t_flip - 1e-12 or \
                (r_min <= t_flip and t_flip == np.inf)
            leave_row = -1
            if pivoting:
                # Among minimum-ratio rows prefer the best-conditioned
                # pivot (largest |step|); under Bland's rule use the
                # lowest variable index, as the anti-cycling proof needs.
                ties = np.flatnonzero(ratios <= r_min + 1e-9)
                if bland:
                    leave_row = int(ties[np.argmin(self.basis[ties])])
                else:
                    piv_mag = np.abs(step_dir[ties])
                    good = ties[piv_mag >= 0.5 * piv_mag.max()]
                    leave_row = int(good[np.argmin(self.basis[good])])
                if abs(w[leave_row]) < 10.0 * PIVOT_TOL and self.etas:
                    # Marginal pivot on stale factors: refresh and retry.
                    restarts += 1
                    if restarts > 5:
                        raise NumericalError(
                            "no acceptable pivot after refactorization")
                    self._refactor()
                    continue
                restarts = 0

            self.values[self.basis] = xb + step_dir * t_star
            self.values[entering] += sigma * t_star

            if pivoting:
                leaving = int(self.basis[leave_row])
                hit_upper = step_dir[leave_row] > 0
                self.values[leaving] = up_b[leave_row] if hit_upper \
                    else lo_b[leave_row]
                self.at_upper[leaving] = bool(hit_upper)
                self.in_basis[leaving] = False
                self.basis[leave_row] = entering
                self.in_basis[entering] = True
                self.at_upper[entering] = False
                self.etas.append((leave_row, w))
            else:
                self.at_upper[entering] = not self.at_upper[entering]

            obj = float(cost @ self.values)
            if obj < last_obj - 1e-10 * max(1.0, abs(last_obj)):
                stall = 0
                bland = False
                last_obj = obj
            else:
                stall += 1
                if stall > STALL_LIMIT:
                    bland = True

    def structural_values(self) -> np.ndarray:
        return self.values[:self.n].copy()
