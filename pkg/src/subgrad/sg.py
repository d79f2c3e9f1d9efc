"""Switching subgradient method on the single-max-constraint form.

Each iteration looks at fbar(x). If fbar(x) <= eps the step descends the
objective with length eps/||g0||^2; otherwise it descends fbar with length
fbar(x)/||gbar||^2. A zero subgradient in the active branch is a
certificate (optimality at an eps-feasible point, or infeasibility of the
constraint system) and stops the run.
"""

from __future__ import annotations

import numpy as np

from . import reports
from .problem import single_constraint_form

__all__ = ["step", "solve"]


def _apply_step(x, eps, f0_grad, fbar_val, fbar_grad):
    """One switching update from cached oracle outputs at x.

    Returns (x_next, stopped). fbar_val None means the problem is
    unconstrained and the objective branch is always active.
    """
    if fbar_val is None or fbar_val <= eps:
        gn2 = float(f0_grad @ f0_grad)
        if gn2 == 0.0:
            return x, True
        return x - (eps / gn2) * f0_grad, False
    gn2 = float(fbar_grad @ fbar_grad)
    if gn2 == 0.0:
        return x, True
    return x - (fbar_val / gn2) * fbar_grad, False


def step(problem, x, eps):
    """One update on a problem already in single-constraint form (m <= 1, l = 0).

    Returns (x_next, stopped); stopped flags the zero-subgradient
    termination with x unchanged.
    """
    if problem.l != 0 or problem.m > 1:
        raise ValueError("step expects the single-constraint form; "
                         "use single_constraint_form(problem) first")
    x = np.asarray(x, dtype=float)
    _, g0 = problem.f0(x)
    if problem.m == 0:
        return _apply_step(x, eps, g0, None, None)
    fbar_val, fbar_grad = problem.ineq[0](x)
    return _apply_step(x, eps, g0, fbar_val, fbar_grad)


def solve(problem, cfg):
    """Run the switching method for cfg.iterations steps.

    The problem is reformulated internally when it has any constraints.
    Trace rows carry val = f0(x_k) and infeas = max{fbar(x_k), 0}; p_eps is
    the best objective over iterates with fbar(x_k) <= eps.
    """
    cfg.validate()
    run = single_constraint_form(problem) if problem.m + problem.l >= 1 else problem
    fbar = run.ineq[0] if run.m == 1 else None

    x = np.zeros(run.n) if cfg.x0 is None else np.asarray(cfg.x0, dtype=float).copy()
    collector = reports.TraceCollector(cfg.eps, cfg.trace_every, cfg.iterations)
    status = reports.COMPLETED

    f0_val, f0_grad = run.f0(x)
    fbar_val, fbar_grad = fbar(x) if fbar is not None else (None, None)
    for k in range(1, cfg.iterations + 1):
        x, stopped = _apply_step(x, cfg.eps, f0_grad, fbar_val, fbar_grad)
        if stopped:
            status = reports.SADDLE_TERMINATED
            break
        f0_val, f0_grad = run.f0(x)
        if fbar is not None:
            fbar_val, fbar_grad = fbar(x)
            infeas = fbar_val if fbar_val > 0.0 else 0.0
        else:
            infeas = 0.0
        collector.note(k, f0_val, infeas)

    if status is reports.COMPLETED and collector.p_eps is None:
        status = reports.NO_EPS_FEASIBLE
    return reports.SolveReport(
        trace=collector.records,
        p_eps=collector.p_eps,
        x_out=x,
        status=status,
        eps=cfg.eps,
        solver="sg",
        wall_time_s=collector.elapsed(),
    )
