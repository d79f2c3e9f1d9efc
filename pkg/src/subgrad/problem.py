"""Constrained problem container, feasibility metrics, and the
single-max-constraint reformulation.

A problem is min f0(x) subject to f_i(x) <= 0 (i = 1..m) and A x = b.
Infeasibility of a point is measured as ||F(x)||_2 + ||A x - b||_2 where
F_i(x) = max{f_i(x), 0}; the alternative single-constraint form replaces
all constraints by fbar(x) = max{f_1, ..., f_m, |a_1.x - b_1|, ...} <= 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .oracles import AbsAffineOracle, MaxOracle

__all__ = [
    "ConstrainedProblem",
    "DualPoint",
    "max_constraint_oracle",
    "single_constraint_form",
]


class ConstrainedProblem:
    """Objective oracle, inequality oracles, and dense equality pair (A, b).

    m = 0 and l = 0 are both legal (the problem degenerates gracefully to
    fewer constraint blocks). All oracles must share the ambient dimension.
    """

    def __init__(self, f0, ineq=(), A=None, b=None):
        self.f0 = f0
        self.ineq = list(ineq)
        self.n = f0.dim
        if A is None:
            A = np.zeros((0, self.n))
        self.A = np.asarray(A, dtype=float)
        if self.A.ndim != 2:
            raise ValueError(f"A must be a matrix, got shape {self.A.shape}")
        if b is None:
            b = np.zeros(self.A.shape[0])
        self.b = np.asarray(b, dtype=float)
        if self.A.shape[1] != self.n:
            raise ValueError(
                f"A has {self.A.shape[1]} columns but the problem dimension is {self.n}")
        if self.b.shape != (self.A.shape[0],):
            raise ValueError(
                f"b has shape {self.b.shape}, expected ({self.A.shape[0]},)")
        for i, o in enumerate(self.ineq):
            if o.dim != self.n:
                raise ValueError(
                    f"inequality oracle {i} has dim {o.dim}, expected {self.n}")
        self.m = len(self.ineq)
        self.l = self.A.shape[0]

    def eval_ineq(self, x):
        """Raw values f_i(x) and their subgradients, as (values, grads)."""
        vals = np.empty(self.m)
        grads = []
        for i, o in enumerate(self.ineq):
            v, g = o(x)
            vals[i] = v
            grads.append(g)
        return vals, grads

    def violation_vector(self, x):
        """Componentwise max{f_i(x), 0}; empty when m = 0."""
        if self.m == 0:
            return np.zeros(0)
        vals = np.empty(self.m)
        for i, o in enumerate(self.ineq):
            vals[i] = o(x)[0]
        return np.maximum(vals, 0.0)

    def equality_residual(self, x):
        """A x - b; empty when l = 0."""
        if self.l == 0:
            return np.zeros(0)
        return self.A @ x - self.b

    def infeasibility(self, x):
        """||max{f(x), 0}||_2 + ||A x - b||_2; zero exactly when x is feasible."""
        total = 0.0
        if self.m:
            total += float(np.linalg.norm(self.violation_vector(x)))
        if self.l:
            total += float(np.linalg.norm(self.A @ x - self.b))
        return total

    def __repr__(self):
        return f"ConstrainedProblem(n={self.n}, m={self.m}, l={self.l})"


@dataclass
class DualPoint:
    """Concatenated primal/dual iterate (x, lambda, nu), lambda >= 0."""

    x: np.ndarray
    lam: np.ndarray = field(default_factory=lambda: np.zeros(0))
    nu: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=float)
        self.lam = np.asarray(self.lam, dtype=float)
        self.nu = np.asarray(self.nu, dtype=float)
        if self.lam.size and np.min(self.lam) < 0.0:
            raise ValueError("multipliers for inequalities must be nonnegative")

    def concat(self):
        return np.concatenate([self.x, self.lam, self.nu])

    @classmethod
    def split(cls, vec, n, m, l):
        vec = np.asarray(vec, dtype=float)
        if vec.shape != (n + m + l,):
            raise ValueError(f"expected length {n + m + l}, got shape {vec.shape}")
        return cls(vec[:n].copy(), vec[n:n + m].copy(), vec[n + m:].copy())


def max_constraint_oracle(problem):
    """Single oracle for max{f_1, ..., f_m, |a_1.x - b_1|, ..., |a_l.x - b_l|}.

    Parts keep the problem's listing order (inequalities first, then one
    absolute residual per equality row) so the lowest-index tie rule is
    reproducible. Requires m + l >= 1.
    """
    parts = list(problem.ineq)
    for j in range(problem.l):
        parts.append(AbsAffineOracle(problem.A[j], problem.b[j]))
    if not parts:
        raise ValueError("problem has no constraints; the max-constraint "
                         "reformulation is undefined for m = l = 0")
    return MaxOracle(parts)


def single_constraint_form(problem):
    """Equivalent problem with the one constraint fbar(x) <= 0 and no equalities."""
    return ConstrainedProblem(problem.f0, [max_constraint_oracle(problem)])
