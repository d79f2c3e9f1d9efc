"""Dual subgradient method with weighted dual averages.

The iterate z = (x, lambda, nu) is driven by the running sum of normalized
saddle directions G(z) = (Gx, -Glam, -Gnu), where Gx is a subgradient of
the Lagrangian in x, Glam = max{f(x), 0} componentwise, and Gnu = A x - b.
Each step does

    s    += G / ||G||
    z     = z0 - s / beta
    beta += 1 / beta
    delta += 1 / ||G||
    x_hat += x / ||G||          (x taken before the z update)

and reports the weighted primal average x_bar = x_hat / delta.

Two entry points share this machinery: mode "multi" runs on the native
constraints; mode "single" first collapses them into one max constraint.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import reports
from .problem import DualPoint, single_constraint_form

__all__ = ["DsgState", "init_state", "saddle_subgradient", "step", "solve"]

# ||G|| at or below this certifies a saddle-point candidate; the update
# divides by ||G|| and is undefined at zero.
SADDLE_TOL = 1e-14


def saddle_subgradient(problem, z):
    """Concatenated direction (Gx, -Glam, -Gnu) at a DualPoint z."""
    return _direction(problem, z.x, z.lam, z.nu)


def _direction(problem, x, lam, nu):
    n, m, l = problem.n, problem.m, problem.l
    _, g0 = problem.f0(x)
    gx = np.array(g0, dtype=float)
    out = np.empty(n + m + l)
    if m:
        for i, oracle in enumerate(problem.ineq):
            v, g = oracle(x)
            if v > 0.0:
                out[n + i] = -v
                if lam[i] != 0.0:
                    gx += lam[i] * g
            else:
                out[n + i] = 0.0
    if l:
        gx += problem.A.T @ nu
        out[n + m:] = problem.b - problem.A @ x
    out[:n] = gx
    return out


@dataclass
class DsgState:
    """Mutable per-run state; z is stored concatenated in ``z_arr``."""

    problem: object
    z0: np.ndarray
    z_arr: np.ndarray
    s_acc: np.ndarray
    x_hat: np.ndarray
    beta: float = 1.0
    delta: float = 0.0
    k: int = 0

    @property
    def z(self):
        return DualPoint.split(self.z_arr, self.problem.n, self.problem.m, self.problem.l)

    @property
    def x_bar(self):
        """Weighted primal average; None until the first step is taken."""
        if self.delta == 0.0:
            return None
        return self.x_hat / self.delta


def init_state(problem, x0=None, lam0=None, nu0=None):
    n, m, l = problem.n, problem.m, problem.l
    x0 = np.zeros(n) if x0 is None else np.asarray(x0, dtype=float)
    lam0 = np.zeros(m) if lam0 is None else np.asarray(lam0, dtype=float)
    nu0 = np.zeros(l) if nu0 is None else np.asarray(nu0, dtype=float)
    z0 = DualPoint(x0, lam0, nu0).concat()
    return DsgState(
        problem=problem,
        z0=z0,
        z_arr=z0.copy(),
        s_acc=np.zeros(n + m + l),
        x_hat=np.zeros(n),
    )


def step(problem, state):
    """One dual-averaging update in place. Returns False on saddle termination."""
    g = _direction(problem, state.z_arr[:problem.n],
                   state.z_arr[problem.n:problem.n + problem.m],
                   state.z_arr[problem.n + problem.m:])
    gnorm = float(np.linalg.norm(g))
    if gnorm <= SADDLE_TOL:
        return False
    x_prev = state.z_arr[:problem.n]
    state.s_acc += g / gnorm
    state.z_arr = state.z0 - state.s_acc / state.beta
    state.delta += 1.0 / gnorm
    state.x_hat += x_prev / gnorm
    state.beta += 1.0 / state.beta
    state.k += 1
    return True


def solve(problem, cfg, mode="multi"):
    """Run DSG for cfg.iterations steps and trace the averaged iterate.

    mode "multi" keeps the native constraint blocks and reports
    infeas = ||max{f(x_bar), 0}||_2 + ||A x_bar - b||_2. mode "single"
    requires m + l >= 1, reformulates to the single max constraint, and
    reports infeas = max{fbar(x_bar), 0}.
    """
    cfg.validate()
    if mode not in ("multi", "single"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "single":
        if problem.m + problem.l < 1:
            raise ValueError("single mode needs at least one constraint to collapse")
        run = single_constraint_form(problem)
        fbar = run.ineq[0]
    else:
        run = problem
        fbar = None

    state = init_state(run, cfg.x0, cfg.lam0, cfg.nu0)
    collector = reports.TraceCollector(cfg.eps, cfg.trace_every, cfg.iterations)
    status = reports.COMPLETED

    for k in range(1, cfg.iterations + 1):
        if not step(run, state):
            status = reports.SADDLE_TERMINATED
            break
        x_bar = state.x_hat / state.delta
        val = run.f0.value(x_bar)
        if mode == "single":
            fv = fbar.value(x_bar)
            infeas = fv if fv > 0.0 else 0.0
        else:
            infeas = run.infeasibility(x_bar)
        collector.note(k, val, infeas)

    x_out = state.x_bar
    if x_out is None:
        # No step was taken (iterations = 0 or immediate saddle); there is
        # no averaged iterate to report, fall back to the start point.
        x_out = state.z0[:run.n].copy()
    if status is reports.COMPLETED and collector.p_eps is None:
        status = reports.NO_EPS_FEASIBLE
    return reports.SolveReport(
        trace=collector.records,
        p_eps=collector.p_eps,
        x_out=x_out,
        status=status,
        eps=cfg.eps,
        solver="mdsg" if mode == "multi" else "sdsg",
        wall_time_s=collector.elapsed(),
    )
