"""Dense two-phase primal simplex for small standard-form linear programs.

Solves ``min c @ x  s.t.  A @ x = b, x >= 0`` on a dense numpy tableau.
Built for the hull-membership programs in :mod:`layersep.separability`:
few rows (dimension + 1), possibly many columns (cloud size), well-scaled
coefficients.  Bland's rule everywhere, so no cycling; a pivot cap turns
numerical pathology into a loud :class:`LPStallError` instead of a wrong
answer.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import LPStallError

# reduced costs / pivot elements below this count as zero
PIVOT_TOL = 1e-11
# phase-1 objective below this counts as feasible
FEASIBILITY_TOL = 1e-9

__all__ = ["SimplexResult", "solve_standard_form", "PIVOT_TOL", "FEASIBILITY_TOL"]


@dataclass(frozen=True)
class SimplexResult:
    """Outcome of a simplex run.

    Attributes:
        status: 'optimal' or 'infeasible' (infeasible carries Farkas duals).
        x: primal solution over the structural variables (zeros if infeasible).
        duals: one multiplier per original row, original row orientation.
        objective: c @ x at the returned point.
        pivots: total pivot count across both phases.
    """

    status: str
    x: np.ndarray
    duals: np.ndarray
    objective: float
    pivots: int


def solve_standard_form(c, A, b, max_pivots: int) -> SimplexResult:
    """Two-phase dense simplex with Bland's rule.

    Args:
        c: costs, shape (n,).
        A: equality-constraint matrix, shape (m, n).
        b: right-hand side, shape (m,); any sign (rows are flipped internally).
        max_pivots: hard cap on total pivots; exceeding it raises LPStallError.

    Returns:
        SimplexResult; ``status='infeasible'`` when phase 1 cannot zero the
        artificial variables.

    Raises:
        LPStallError: pivot cap exceeded, or an unbounded ray shows up (which
            for a correctly posed bounded program means numerical failure).
    """
    A = np.array(A, dtype=np.float64)
    b = np.array(b, dtype=np.float64)
    c = np.asarray(c, dtype=np.float64)
    m, n = A.shape
    flip = b < 0.0
    A[flip] *= -1.0
    b[flip] *= -1.0

    # tableau: structural columns, artificial identity, rhs
    T = np.empty((m, n + m + 1))
    T[:, :n] = A
    T[:, n : n + m] = np.eye(m)
    T[:, -1] = b
    basis = np.arange(n, n + m)
    pivots = 0

    def reduced_costs(costs):
        cb = costs[basis]
        return costs - cb @ T[:, :-1], float(cb @ T[:, -1])

    def run_phase(costs, entering_limit):
        # entering_limit: columns >= limit never enter (bars artificials in
        # phase 2, and re-entry of departed artificials in phase 1)
        nonlocal pivots
        while True:
            z, _ = reduced_costs(costs)
            candidates = np.flatnonzero(z[:entering_limit] < -PIVOT_TOL)
            if candidates.size == 0:
                return
            j = int(candidates[0])  # Bland: lowest index
            col = T[:, j]
            rows = np.flatnonzero(col > PIVOT_TOL)
            if rows.size == 0:
                raise LPStallError("unbounded direction in a bounded program")
            ratios = T[rows, -1] / col[rows]
            best = ratios.min()
            near = rows[ratios <= best + 1e-12 * (1.0 + abs(best))]
            r = int(near[np.argmin(basis[near])])  # Bland: lowest basis index
            _pivot(T, basis, r, j)
            pivots += 1
            if pivots > max_pivots:
                raise LPStallError(
                    f"simplex exceeded its pivot cap ({max_pivots}); "
                    "treating as a diagnostic, not a verdict"
                )

    # ---- phase 1: drive artificials to zero
    phase1_costs = np.concatenate([np.zeros(n), np.ones(m)])
    run_phase(phase1_costs, entering_limit=n)
    z1, infeas = reduced_costs(phase1_costs)
    if infeas > FEASIBILITY_TOL:
        duals = 1.0 - z1[n : n + m]
        duals[flip] *= -1.0
        return SimplexResult("infeasible", np.zeros(n), duals, float("inf"), pivots)

    # pivot out any artificial stuck in the basis at level ~0; rows whose
    # structural part is all zeros are redundant and stay pinned harmlessly
    for r in np.flatnonzero(basis >= n):
        structural = np.flatnonzero(np.abs(T[r, :n]) > PIVOT_TOL)
        if structural.size:
            _pivot(T, basis, int(r), int(structural[0]))
            pivots += 1

    # ---- phase 2: original objective, artificials barred from entering
    phase2_costs = np.concatenate([c, np.zeros(m)])
    run_phase(phase2_costs, entering_limit=n)
    z2, _ = reduced_costs(phase2_costs)
    x = np.zeros(n)
    keep = basis < n
    x[basis[keep]] = T[keep, -1]
    np.maximum(x, 0.0, out=x)  # basic values can round to -1e-17
    duals = -z2[n : n + m]
    duals[flip] *= -1.0
    return SimplexResult("optimal", x, duals, float(c @ x), pivots)


def _pivot(T, basis, r, j):
    T[r] /= T[r, j]
    col = T[:, j].copy()
    col[r] = 0.0
    T -= np.outer(col, T[r])
    T[:, j] = 0.0
    T[r, j] = 1.0
    basis[r] = j
