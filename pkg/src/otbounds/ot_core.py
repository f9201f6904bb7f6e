"""Exact and entropic optimal transport between uniform discrete measures.

The central object is :func:`solve_exact`, which returns a vertex of the
transport polytope (rows sum to 1/n, columns to 1/m) minimizing the given
cost.  It runs a network simplex on integer-scaled supplies, so the returned
basic solution is exact up to one float division per entry.

:func:`solve_sinkhorn` is the entropically regularized alternative.  It is
never used by default elsewhere in the package; it exists for callers who
want the approximation on large instances.
"""

from __future__ import annotations

import io
import warnings
from dataclasses import dataclass

import numpy as np

from . import _network_simplex
from .errors import (
    ConvergenceWarning,
    DimensionMismatch,
    NonFiniteCost,
    SizeOverflow,
)

__all__ = [
    "DEFAULT_MAX_ENTRIES",
    "DiscreteOtProblem",
    "TransportPlan",
    "solve_exact",
    "solve_sinkhorn",
    "evaluate_plan",
]

DEFAULT_MAX_ENTRIES = 10**8


@dataclass(frozen=True)
class DiscreteOtProblem:
    """A dense cost matrix between n source and m target atoms.

    Marginals are implicit: uniform 1/n on the rows and 1/m on the columns.

    Parameters
    ----------
    cost : array_like, shape (n, m)
        Finite transport costs.
    max_entries : int
        Guard against accidentally huge problems; `n*m` above this raises
        :class:`SizeOverflow`.
    """

    cost: np.ndarray
    max_entries: int = DEFAULT_MAX_ENTRIES

    def __post_init__(self) -> None:
        cost = np.ascontiguousarray(self.cost, dtype=np.float64)
        if cost.ndim != 2 or cost.shape[0] < 1 or cost.shape[1] < 1:
            raise DimensionMismatch(
                f"cost must be a 2-D matrix with n, m >= 1, got shape {cost.shape}"
            )
        if cost.size > self.max_entries:
            raise SizeOverflow(
                f"cost matrix has {cost.size} entries, cap is {self.max_entries}"
            )
        if not np.all(np.isfinite(cost)):
            raise NonFiniteCost("cost matrix contains NaN or infinite entries")
        object.__setattr__(self, "cost", cost)

    @property
    def n(self) -> int:
        return self.cost.shape[0]

    @property
    def m(self) -> int:
        return self.cost.shape[1]


@dataclass(frozen=True)
class TransportPlan:
    """A coupling over the n x m bipartite support, stored as triplets.

    ``objective`` is the plan-weighted sum of the cost it was solved
    against.  Exact plans are vertices (at most n+m-1 positive entries);
    Sinkhorn plans are dense and flagged ``is_approximate``.
    """

    row: np.ndarray
    col: np.ndarray
    mass: np.ndarray
    n: int
    m: int
    objective: float
    is_approximate: bool = False
    converged: bool = True

    @property
    def support_size(self) -> int:
        return int(np.count_nonzero(self.mass))

    @property
    def entries(self) -> list[tuple[int, int, float]]:
        return [
            (int(i), int(j), float(v))
            for i, j, v in zip(self.row, self.col, self.mass)
        ]

    def row_sums(self) -> np.ndarray:
        return np.bincount(self.row, weights=self.mass, minlength=self.n)

    def col_sums(self) -> np.ndarray:
        return np.bincount(self.col, weights=self.mass, minlength=self.m)

    def to_csv(self, fileobj: io.TextIOBase) -> None:
        """Dump the plan as debug CSV rows ``i,j,mass``."""
        fileobj.write("i,j,mass\n")
        for i, j, v in zip(self.row, self.col, self.mass):
            fileobj.write(f"{int(i)},{int(j)},{float(v)!r}\n")


def solve_exact(problem: DiscreteOtProblem) -> TransportPlan:
    """Minimize the transport cost exactly; returns an optimal vertex.

    The solver works on integer supplies (each source ships m units, each
    target receives n units) and divides flows by n*m on output, so the
    marginal constraints hold to float rounding only in that division.

    Raises
    ------
    NonFiniteCost, SizeOverflow
        Propagated from problem construction when called with a raw array.
    RuntimeError
        If the pivot cap is hit, which indicates a solver defect rather
        than a property of the input.
    """
    n, m = problem.n, problem.m
    flat = problem.cost.reshape(-1)
    pivot_cap = max(1_000_000, 200 * (n + m))
    arcs, flows, status, _pivots = _network_simplex.solve(flat, n, m, pivot_cap)
    if status != _network_simplex.OPTIMAL:
        raise RuntimeError(
            f"network simplex hit the pivot cap on a {n}x{m} instance"
        )
    keep = flows > 0
    arcs = arcs[keep]
    flows = flows[keep]
    if arcs.size == 0:
        # n = m = 1 with zero flow cannot happen (total flow is n*m >= 1),
        # but guard the degenerate empty selection for type stability
        arcs = np.zeros(1, dtype=np.int64)
        flows = np.asarray([n * m], dtype=np.int64)
    row = arcs // m
    col = arcs - row * m
    scale = float(n) * float(m)
    # integer-valued float sum, then one division: exact for integer costs
    total = float(np.dot(flat[arcs], flows.astype(np.float64)))
    return TransportPlan(
        row=row,
        col=col,
        mass=flows.astype(np.float64) / scale,
        n=n,
        m=m,
        objective=total / scale,
    )


def solve_sinkhorn(
    problem: DiscreteOtProblem,
    epsilon: float,
    max_iters: int = 10_000,
    tol: float = 1e-9,
) -> TransportPlan:
    """Entropically regularized transport via log-domain Sinkhorn.

    Stops once the L1 deviation of both marginals is at most ``tol``.  If
    the iteration budget runs out first, the best iterate is returned with
    ``converged=False`` and a :class:`ConvergenceWarning` is emitted.
    """
    from scipy.special import logsumexp

    if not epsilon > 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    n, m = problem.n, problem.m
    c_over_eps = problem.cost / epsilon
    log_a = -np.log(n)  # uniform row marginal 1/n
    log_b = -np.log(m)
    f = np.zeros(n)  # scaled potentials: plan = exp(f[:,None] + g[None,:] - C/eps)
    g = np.zeros(m)
    converged = False
    for _ in range(max_iters):
        f = log_a - logsumexp(g[None, :] - c_over_eps, axis=1)
        g = log_b - logsumexp(f[:, None] - c_over_eps, axis=0)
        plan = np.exp(f[:, None] + g[None, :] - c_over_eps)
        err = np.abs(plan.sum(axis=1) - 1.0 / n).sum()
        err += np.abs(plan.sum(axis=0) - 1.0 / m).sum()
        if err <= tol:
            converged = True
            break
    plan = np.exp(f[:, None] + g[None, :] - c_over_eps)
    if not converged:
        warnings.warn(
            f"Sinkhorn stopped after {max_iters} iterations with marginal "
            f"L1 error above tol={tol}",
            ConvergenceWarning,
            stacklevel=2,
        )
    row, col = np.nonzero(plan)
    mass = plan[row, col]
    objective = float(np.sum(plan * problem.cost))
    return TransportPlan(
        row=row.astype(np.int64),
        col=col.astype(np.int64),
        mass=mass,
        n=n,
        m=m,
        objective=objective,
        is_approximate=True,
        converged=converged,
    )


def evaluate_plan(plan: TransportPlan, value_matrix: np.ndarray) -> float:
    """Plan-weighted sum of an arbitrary value matrix.

    The matrix may differ from the cost the plan was solved against; this
    is how the covariate penalty gets stripped from a solved objective.
    """
    value_matrix = np.asarray(value_matrix, dtype=np.float64)
    if value_matrix.shape != (plan.n, plan.m):
        raise DimensionMismatch(
            f"value matrix shape {value_matrix.shape} does not match plan "
            f"dimensions ({plan.n}, {plan.m})"
        )
    return float(np.dot(value_matrix[plan.row, plan.col], plan.mass))
