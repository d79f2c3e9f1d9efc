"""Small dense LP solver used as an independent ground-truth oracle.

Two-phase primal simplex on a dense tableau with Bland's anti-cycling
rule. Built for desk-scale certification runs (thousands of nonzeros, not
millions): correctness and a termination guarantee matter here, speed does
not.

``encode_case1`` and ``encode_lad`` map the benchmark problem families
onto LpProblem instances (split variables for the l1 terms).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "LpProblem",
    "LpResult",
    "lp_solve_small",
    "encode_case1",
    "encode_lad",
    "OPTIMAL",
    "INFEASIBLE",
    "UNBOUNDED",
    "NUMERICAL_LIMIT",
]

OPTIMAL = "OPTIMAL"
INFEASIBLE = "INFEASIBLE"
UNBOUNDED = "UNBOUNDED"
NUMERICAL_LIMIT = "NUMERICAL_LIMIT"


@dataclass
class LpProblem:
    """min c.x subject to A_eq x = b_eq and lower <= x <= upper (+-inf ok)."""

    c: np.ndarray
    A_eq: np.ndarray
    b_eq: np.ndarray
    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        self.c = np.asarray(self.c, dtype=float)
        n = self.c.shape[0]
        self.A_eq = np.asarray(self.A_eq, dtype=float).reshape(-1, n)
        self.b_eq = np.asarray(self.b_eq, dtype=float)
        self.lower = np.asarray(self.lower, dtype=float)
        self.upper = np.asarray(self.upper, dtype=float)
        if self.b_eq.shape[0] != self.A_eq.shape[0]:
            raise ValueError("A_eq and b_eq disagree on row count")
        if self.lower.shape != (n,) or self.upper.shape != (n,):
            raise ValueError("bounds must match the variable count")
        if np.any(self.lower > self.upper):
            raise ValueError("lower bound above upper bound")


@dataclass
class LpResult:
    status: str
    x: np.ndarray | None
    value: float | None
    dual_obj: float | None = None
    n_pivots: int = 0


def _standardize(lp):
    """Rewrite as min c_std.u, A_std u = b_std, u >= 0, value offset const.

    Variables are shifted by a finite lower bound, flipped around a finite
    upper bound, or split into u+ - u- when free. Two-sided bounds add a
    row u + slack = upper - lower.
    """
    n = lp.c.shape[0]
    cols = []          # columns of A_std as (orig var index, sign)
    shift = np.zeros(n)
    ranged = []        # (std col index, range width) rows to append
    for j in range(n):
        lo, up = lp.lower[j], lp.upper[j]
        if np.isfinite(lo):
            shift[j] = lo
            cols.append((j, 1.0))
            if np.isfinite(up):
                ranged.append((len(cols) - 1, up - lo))
        elif np.isfinite(up):
            shift[j] = up
            cols.append((j, -1.0))
        else:
            cols.append((j, 1.0))
            cols.append((j, -1.0))
    n_main = len(cols)
    n_slack = len(ranged)
    meq = lp.A_eq.shape[0]
    m_rows = meq + n_slack

    A = np.zeros((m_rows, n_main + n_slack))
    for idx, (j, sign) in enumerate(cols):
        A[:meq, idx] = sign * lp.A_eq[:, j]
    b = np.concatenate([lp.b_eq - lp.A_eq @ shift, np.zeros(n_slack)])
    c = np.zeros(n_main + n_slack)
    for idx, (j, sign) in enumerate(cols):
        c[idx] = sign * lp.c[j]
    for r, (col, width) in enumerate(ranged):
        A[meq + r, col] = 1.0
        A[meq + r, n_main + r] = 1.0
        b[meq + r] = width
    const = float(lp.c @ shift)
    return A, b, c, cols, shift, const, n_main


def _pivot(tab, basis, row, col):
    tab[row] /= tab[row, col]
    piv = tab[row]
    for i in range(tab.shape[0]):
        if i != row and tab[i, col] != 0.0:
            tab[i] -= tab[i, col] * piv
    basis[row] = col


def _run_phase(tab, basis, cost_row, allowed, tol, max_pivots, pivots_done):
    """Bland-rule pivoting until the given cost row is optimal.

    Returns (outcome, n_pivots) with outcome one of "optimal", "unbounded",
    "limit". ``allowed`` marks columns that may enter.
    """
    m = len(basis)
    pivots = pivots_done
    while True:
        enter = -1
        row_cost = tab[cost_row]
        for j in range(tab.shape[1] - 1):
            if allowed[j] and row_cost[j] < -tol:
                enter = j
                break
        if enter < 0:
            return "optimal", pivots
        ratio = None
        leave = -1
        for i in range(m):
            a = tab[i, enter]
            if a > tol:
                r = tab[i, -1] / a
                if ratio is None or r < ratio - 1e-15 or (
                        abs(r - ratio) <= 1e-15 and basis[i] < basis[leave]):
                    ratio, leave = r, i
        if leave < 0:
            return "unbounded", pivots
        _pivot(tab, basis, leave, enter)
        pivots += 1
        if pivots >= max_pivots:
            return "limit", pivots


def lp_solve_small(lp, tol=1e-9, max_pivots=10**6):
    """Two-phase dense simplex with Bland's rule.

    Returns an LpResult whose status is OPTIMAL, INFEASIBLE, UNBOUNDED, or
    NUMERICAL_LIMIT (pivot cap hit). On OPTIMAL the primal solution is
    clipped onto its bounds, and dual_obj carries the dual objective of the
    standardized system for a strong-duality spot check.
    """
    A, b, c, cols, shift, const, n_main = _standardize(lp)
    m, n_std = A.shape

    # Normalize to b >= 0 so the artificial basis is feasible.
    flip = b < 0
    A = A.copy()
    A[flip] *= -1.0
    b = b.copy()
    b[flip] *= -1.0

    n_tot = n_std + m  # artificials appended
    tab = np.zeros((m + 2, n_tot + 1))
    tab[:m, :n_std] = A
    tab[:m, n_std:n_tot] = np.eye(m)
    tab[:m, -1] = b
    tab[m, :n_std] = c                      # phase-2 costs
    # Phase-1 costs (sum of artificials), reduced against the artificial basis.
    tab[m + 1, :n_std] = -A.sum(axis=0)
    tab[m + 1, -1] = -b.sum()
    basis = list(range(n_std, n_tot))

    allowed = np.ones(n_tot, dtype=bool)
    outcome, pivots = _run_phase(tab, basis, m + 1, allowed, tol, max_pivots, 0)
    if outcome == "limit":
        return LpResult(NUMERICAL_LIMIT, None, None, n_pivots=pivots)
    if outcome == "unbounded":
        # Phase-1 objective is bounded below by zero; a ratio-test failure
        # here means the tableau degraded numerically.
        return LpResult(NUMERICAL_LIMIT, None, None, n_pivots=pivots)
    scale = 1.0 + float(np.linalg.norm(b))
    if -tab[m + 1, -1] > tol * scale:
        return LpResult(INFEASIBLE, None, None, n_pivots=pivots)

    # Drive leftover artificials out of the basis; rows that cannot pivot
    # on any structural column are redundant and get dropped.
    keep = np.ones(m, dtype=bool)
    for i in range(m):
        if basis[i] >= n_std:
            target = -1
            for j in range(n_std):
                if abs(tab[i, j]) > tol:
                    target = j
                    break
            if target >= 0:
                _pivot(tab, basis, i, target)
                pivots += 1
            else:
                keep[i] = False
    if not np.all(keep):
        rows = np.concatenate([np.nonzero(keep)[0], [m, m + 1]])
        tab = tab[rows]
        basis = [basis[i] for i in range(m) if keep[i]]
        m = len(basis)

    allowed[n_std:] = False
    outcome, pivots = _run_phase(tab, basis, m, allowed, tol, max_pivots, pivots)
    if outcome == "limit":
        return LpResult(NUMERICAL_LIMIT, None, None, n_pivots=pivots)
    if outcome == "unbounded":
        return LpResult(UNBOUNDED, None, None, n_pivots=pivots)

    u = np.zeros(n_std)
    for i, bi in enumerate(basis):
        if bi < n_std:
            u[bi] = max(tab[i, -1], 0.0)
    x = shift.copy()
    for idx, (j, sign) in enumerate(cols):
        x[j] += sign * u[idx]
    x = np.clip(x, lp.lower, lp.upper)
    value = float(lp.c @ x)

    # Dual objective of the standardized system (y solves B^T y = c_B);
    # together with dual feasibility this certifies optimality. After the
    # drive-out pass every kept basis entry is structural.
    dual_obj = None
    try:
        A_kept = A[keep]
        b_kept = b[keep]
        Bmat = A_kept[:, basis]
        y = np.linalg.solve(Bmat.T, c[basis])
        dual_obj = float(y @ b_kept) + const
    except np.linalg.LinAlgError:
        dual_obj = None

    return LpResult(OPTIMAL, x, value, dual_obj=dual_obj, n_pivots=pivots)


def encode_case1(problem):
    """LP for min c.x over the unit l1 ball intersected with A x = b.

    Uses x = xp - xm with xp, xm >= 0 and sum(xp + xm) + t = 1, t >= 0.
    The first n entries of the LP solution are xp, the next n are xm.
    """
    c = getattr(problem.f0, "c", None)
    if c is None:
        raise ValueError("encode_case1 needs a linear objective oracle")
    n = problem.n
    l = problem.l
    c_lp = np.concatenate([c, -c, [0.0]])
    A_lp = np.zeros((l + 1, 2 * n + 1))
    A_lp[:l, :n] = problem.A
    A_lp[:l, n:2 * n] = -problem.A
    A_lp[l, :2 * n] = 1.0
    A_lp[l, 2 * n] = 1.0
    b_lp = np.concatenate([problem.b, [1.0]])
    lower = np.zeros(2 * n + 1)
    upper = np.full(2 * n + 1, np.inf)
    return LpProblem(c_lp, A_lp, b_lp, lower, upper)


def encode_lad(problem, nbar):
    """LP for min ||D x - w||_1 given its slack formulation (variables x, y).

    Recovers D and w from the equality block (A = [-D | I], b = -w) and
    splits the residual: min sum(yp + ym) s.t. D x - yp + ym = w, x free.
    """
    D = -problem.A[:, :nbar]
    w = -problem.b
    rows = D.shape[0]
    if problem.m != 0 or problem.n != nbar + rows or not np.array_equal(
            problem.A[:, nbar:], np.eye(rows)):
        raise ValueError("problem does not have the expected slack-form shape")
    c_lp = np.concatenate([np.zeros(nbar), np.ones(2 * rows)])
    A_lp = np.zeros((rows, nbar + 2 * rows))
    A_lp[:, :nbar] = D
    A_lp[:, nbar:nbar + rows] = -np.eye(rows)
    A_lp[:, nbar + rows:] = np.eye(rows)
    lower = np.concatenate([np.full(nbar, -np.inf), np.zeros(2 * rows)])
    upper = np.full(nbar + 2 * rows, np.inf)
    return LpProblem(c_lp, A_lp, w, lower, upper)
