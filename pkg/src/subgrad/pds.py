"""Penalized primal-dual subgradient method.

Works on the penalized Lagrangian

    L_rho(x, lam, nu) = f0(x) + lam.F(x) + nu.(Ax - b)
                        + rho (||F(x)||_2^s + ||Ax - b||_2^s)

with F_i(x) = max{f_i(x), 0} and penalty exponent s in [1, 2]. Each step
moves z = (x, lam, nu) against the selection

    T(z) = (Tx, -F(x), b - Ax),
    Tx   = g0 + sum_i (lam_i + rho * p_i) g_i + A^T (nu + rho * q)

where p = s||F||^(s-2) F and q = s||Ax-b||^(s-2) (Ax-b) (zero vectors when
the respective residual is zero), with the normalized step

    z <- z - (gamma_k / ||T||_2) T,   gamma_k = (k+1)^(-1 + delta/2).

s = 2 recovers the standard primal-dual subgradient method; no code path
special-cases it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import reports
from .oracles import norm_power_subgrad
from .problem import DualPoint

__all__ = ["PdsState", "init_state", "step_length", "penalized_saddle_subgradient",
           "step", "solve"]

# ||T|| at or below this certifies 0 in T_rho(z), i.e. a saddle candidate.
SADDLE_TOL = 1e-14


def step_length(k, delta_exp):
    """gamma_k = (k+1)^(-1 + delta/2); strictly decreasing, gamma_0 = 1."""
    if not 0.0 < delta_exp < 1.0:
        raise ValueError(f"delta_exp must lie in (0, 1), got {delta_exp}")
    return float(k + 1) ** (-1.0 + delta_exp / 2.0)


def _direction(problem, x, lam, nu, rho, s_exp):
    """T at (x, lam, nu) plus the evaluations (f0_val, F, residual) at x."""
    n, m, l = problem.n, problem.m, problem.l
    f0_val, g0 = problem.f0(x)
    tx = np.array(g0, dtype=float)
    out = np.empty(n + m + l)
    if m:
        fvals, grads = problem.eval_ineq(x)
        fpos = np.maximum(fvals, 0.0)
        pen = norm_power_subgrad(fpos, s_exp)
        for i in range(m):
            if fvals[i] > 0.0:
                w = lam[i] + rho * pen[i]
                if w != 0.0:
                    tx += w * grads[i]
        out[n:n + m] = -fpos
    else:
        fpos = np.zeros(0)
    if l:
        r = problem.A @ x - problem.b
        qen = norm_power_subgrad(r, s_exp)
        tx += problem.A.T @ (nu + rho * qen)
        out[n + m:] = -r
    else:
        r = np.zeros(0)
    out[:n] = tx
    return out, f0_val, fpos, r


def penalized_saddle_subgradient(problem, z, rho, s_exp):
    """Concatenated selection (Tx, -F(x), b - Ax) at a DualPoint z."""
    out, _, _, _ = _direction(problem, z.x, z.lam, z.nu, rho, s_exp)
    return out


@dataclass
class PdsState:
    """Mutable per-run state; z is stored concatenated in ``z_arr``."""

    problem: object
    z_arr: np.ndarray
    rho: float
    s_exp: float
    delta_exp: float
    k: int = 0

    @property
    def z(self):
        return DualPoint.split(self.z_arr, self.problem.n, self.problem.m, self.problem.l)


def init_state(problem, rho, s_exp, delta_exp, x0=None, lam0=None, nu0=None):
    n, m, l = problem.n, problem.m, problem.l
    if not rho > 0:
        raise ValueError("rho must be positive")
    x0 = np.zeros(n) if x0 is None else np.asarray(x0, dtype=float)
    lam0 = np.zeros(m) if lam0 is None else np.asarray(lam0, dtype=float)
    nu0 = np.zeros(l) if nu0 is None else np.asarray(nu0, dtype=float)
    z0 = DualPoint(x0, lam0, nu0).concat()
    return PdsState(problem=problem, z_arr=z0, rho=rho, s_exp=s_exp,
                    delta_exp=delta_exp)


def step(problem, state):
    """One normalized step in place. Returns False on saddle termination.

    The move has euclidean length exactly gamma_k, so lam stays >= 0
    (its block moves by +alpha*F with F >= 0).
    """
    n, m = problem.n, problem.m
    t, _, _, _ = _direction(problem, state.z_arr[:n], state.z_arr[n:n + m],
                            state.z_arr[n + m:], state.rho, state.s_exp)
    tnorm = float(np.linalg.norm(t))
    if tnorm <= SADDLE_TOL:
        return False
    alpha = step_length(state.k, state.delta_exp) / tnorm
    state.z_arr = state.z_arr - alpha * t
    state.k += 1
    return True


def solve(problem, cfg, z_star=None):
    """Run PDS for cfg.iterations steps.

    Trace rows carry val = f0(x_k) and infeas = ||F(x_k)|| + ||A x_k - b||.
    When z_star (a known saddle point, concatenated or DualPoint) is
    supplied, the report's best_t_index is the 1-based step whose direction
    T had the smallest inner product with z - z_star, a diagnostic for the
    rate analysis; it is None otherwise.
    """
    cfg.validate()
    rho = cfg.resolved_rho()
    n, m, l = problem.n, problem.m, problem.l
    state = init_state(problem, rho, cfg.s_exp, cfg.delta_exp, cfg.x0, cfg.lam0, cfg.nu0)
    if z_star is not None:
        z_star = z_star.concat() if isinstance(z_star, DualPoint) else np.asarray(z_star, dtype=float)

    collector = reports.TraceCollector(cfg.eps, cfg.trace_every, cfg.iterations)
    status = reports.COMPLETED
    best_t = None
    best_t_index = None

    t, f0_val, fpos, r = _direction(problem, state.z_arr[:n], state.z_arr[n:n + m],
                                    state.z_arr[n + m:], rho, cfg.s_exp)
    for k in range(1, cfg.iterations + 1):
        tnorm = float(np.linalg.norm(t))
        if tnorm <= SADDLE_TOL:
            status = reports.SADDLE_TERMINATED
            break
        if z_star is not None:
            tdot = float(t @ (state.z_arr - z_star))
            if best_t is None or tdot < best_t:
                best_t, best_t_index = tdot, k
        alpha = step_length(state.k, cfg.delta_exp) / tnorm
        state.z_arr = state.z_arr - alpha * t
        state.k += 1
        t, f0_val, fpos, r = _direction(problem, state.z_arr[:n], state.z_arr[n:n + m],
                                        state.z_arr[n + m:], rho, cfg.s_exp)
        infeas = 0.0
        if m:
            infeas += float(np.linalg.norm(fpos))
        if l:
            infeas += float(np.linalg.norm(r))
        collector.note(k, f0_val, infeas)

    if status is reports.COMPLETED and collector.p_eps is None:
        status = reports.NO_EPS_FEASIBLE
    return reports.SolveReport(
        trace=collector.records,
        p_eps=collector.p_eps,
        x_out=state.z_arr[:n].copy(),
        status=status,
        eps=cfg.eps,
        solver="pds",
        wall_time_s=collector.elapsed(),
        s_exp=cfg.s_exp,
        best_t_index=best_t_index,
    )
