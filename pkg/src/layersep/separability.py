"""Point-vs-set separability checks with re-checkable certificates.

Two notions of separability for a point X against a finite set M:

* Fisher: ``(X, Y) < (X, X)`` strictly for every Y in M.  The hyperplane with
  normal X witnesses it.  Cheapest check, and it implies linear separability.
* Linear: ``X not in conv(M)``.  Decided by the bounded-normal margin program
  ``max m  s.t. (A, X - Y) >= m for all Y,  |A|_inf <= 1``; the point is
  separable iff the optimal margin exceeds ``tol``.  The implementation runs
  the two-phase simplex on the exact dual of that program — minimize
  ``|X - sum(lambda_j Y_j)|_1`` over the probability simplex — which has the
  same optimal value and a (dimension + 2)-row tableau however large M is.
  The dual values give the optimal normal A, the basis gives the convex
  coefficients; so one solve produces the witness for either verdict.

Set-level checks ask whether every point is separable from the others
(1-convexity).  The linear set check pre-screens each point with the Fisher
test and only runs the LP on points that fail it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, LPStallError
from .geometry import PointCloud
from .lp import solve_standard_form

__all__ = [
    "DEFAULT_TOL",
    "SeparabilityCertificate",
    "SetReport",
    "fisher_separable_point",
    "fisher_separable_set",
    "linearly_separable_point",
    "linearly_separable_set",
    "fisher_point_vs_set",
    "lp_point_vs_set",
    "verify_certificate",
]

DEFAULT_TOL = 1e-9

# simplex pivot budget for a check against k points in dimension d: the cloud
# has n = k + 1 points, cap = 50 * (n + d)
def _pivot_cap(k: int, d: int) -> int:
    return 50 * (k + 1 + d)


@dataclass(frozen=True)
class SeparabilityCertificate:
    """One verdict plus the evidence to re-check it by direct arithmetic.

    Attributes:
        verdict: 'separable' or 'not_separable'.
        method: 'fisher' | 'lp' | 'exact_oracle' — which decision path ran.
        margin: achieved strict-separation slack.  Fisher: min over Y of
            (X,X) - (X,Y) (negative when not separable, +inf for an empty M).
            LP: the optimal margin of the bounded-normal program.  The exact
            oracle proves verdicts without a metric, so it reports 0.0.
        hyperplane: witness normal A with (A, X) > (A, Y) for all Y; present
            for separable fisher/lp verdicts.
        coefficients: convex coefficients over M (aligned with M's order)
            reconstructing X; present for not_separable lp/exact verdicts.
    """

    verdict: str
    method: str
    margin: float
    hyperplane: np.ndarray | None = None
    coefficients: np.ndarray | None = None

    @property
    def separable(self) -> bool:
        return self.verdict == "separable"


@dataclass(frozen=True)
class SetReport:
    """Aggregate of per-point certificates for a 1-convexity check.

    ``per_point`` is indexed by point order; in verdict-only mode it is
    truncated at the first failure (the all_separable/first_failure fields
    are still authoritative).  ``lp_calls`` counts simplex runs and
    ``lp_skipped_by_fisher`` counts points the Fisher pre-screen settled;
    their sum is the number of point-level linear checks performed.
    """

    per_point: tuple[SeparabilityCertificate, ...]
    all_separable: bool
    first_failure: int | None
    lp_calls: int = 0
    lp_skipped_by_fisher: int = 0


def _others(points: np.ndarray, i: int) -> np.ndarray:
    return np.delete(points, i, axis=0)


def _check_index(i, n):
    if isinstance(i, bool) or not float(i).is_integer() or not 0 <= int(i) < n:
        raise DomainError(f"point index {i!r} out of range for n={n}")
    return int(i)


# ---------------------------------------------------------------------------
# Fisher checks


def fisher_point_vs_set(x: np.ndarray, others: np.ndarray) -> SeparabilityCertificate:
    """Fisher-separate an arbitrary point from an arbitrary finite set."""
    x = np.asarray(x, dtype=np.float64)
    if len(others) == 0:
        return SeparabilityCertificate(
            "separable", "fisher", float("inf"), hyperplane=x.copy()
        )
    dots = np.asarray(others, dtype=np.float64) @ x
    self_dot = float(x @ x)
    margin = self_dot - float(dots.max())
    if bool(np.all(dots < self_dot)):  # strict, exact floating comparison
        return SeparabilityCertificate("separable", "fisher", margin, hyperplane=x.copy())
    return SeparabilityCertificate("not_separable", "fisher", margin)


def fisher_separable_point(i: int, cloud: PointCloud) -> SeparabilityCertificate:
    """Is point i Fisher-separable from the rest of the cloud?"""
    i = _check_index(i, cloud.n)
    return fisher_point_vs_set(cloud.points[i], _others(cloud.points, i))


def _fisher_margins(points: np.ndarray, block: int = 256) -> np.ndarray:
    """margin_i = (X_i,X_i) - max_{j != i} (X_i,X_j) for all i, blockwise Gram."""
    n = points.shape[0]
    self_dots = np.einsum("ij,ij->i", points, points)
    margins = np.empty(n)
    if n == 1:
        margins[0] = float("inf")
        return margins
    for start in range(0, n, block):
        stop = min(start + block, n)
        gram = points[start:stop] @ points.T
        gram[np.arange(stop - start), np.arange(start, stop)] = -np.inf
        margins[start:stop] = self_dots[start:stop] - gram.max(axis=1)
    return margins


def _fisher_strict_flags(points: np.ndarray, margins: np.ndarray) -> np.ndarray:
    # margin > 0 is equivalent to the strict elementwise comparison except
    # when the subtraction rounds a genuinely positive gap to zero, which
    # cannot happen at these magnitudes; assert the cheap version.
    return margins > 0.0


def fisher_separable_set(cloud: PointCloud, verdict_only: bool = False) -> SetReport:
    """Fisher 1-convexity: every point Fisher-separable from the others.

    ``verdict_only`` permits early exit at the first failure; per_point is
    then truncated.
    """
    pts = cloud.points
    certs: list[SeparabilityCertificate] = []
    first_failure = None
    if verdict_only:
        # row-at-a-time scan so a failure at index 0 costs O(nd), not O(n^2 d)
        self_dots = np.einsum("ij,ij->i", pts, pts)
        for i in range(cloud.n):
            dots = pts @ pts[i]
            dots[i] = -np.inf
            margin = float(self_dots[i] - dots.max())
            ok = bool(np.all(dots < self_dots[i]))
            certs.append(
                SeparabilityCertificate(
                    "separable" if ok else "not_separable",
                    "fisher",
                    margin,
                    hyperplane=pts[i].copy() if ok else None,
                )
            )
            if not ok:
                first_failure = i
                break
    else:
        margins = _fisher_margins(pts)
        flags = _fisher_strict_flags(pts, margins)
        for i in range(cloud.n):
            ok = bool(flags[i])
            certs.append(
                SeparabilityCertificate(
                    "separable" if ok else "not_separable",
                    "fisher",
                    float(margins[i]),
                    hyperplane=pts[i].copy() if ok else None,
                )
            )
            if not ok and first_failure is None:
                first_failure = i
    return SetReport(tuple(certs), first_failure is None, first_failure)


# ---------------------------------------------------------------------------
# linear (hull) checks


def lp_point_vs_set(
    x: np.ndarray, others: np.ndarray, tol: float = DEFAULT_TOL
) -> SeparabilityCertificate:
    """Linear-separate an arbitrary point from an arbitrary finite set.

    Runs the L1 polytope-distance program described in the module docstring.
    Raises LPStallError if the simplex stalls (diagnostic, not a verdict).
    """
    x = np.asarray(x, dtype=np.float64)
    others = np.asarray(others, dtype=np.float64)
    if tol <= 0.0:
        raise DomainError(f"tol must be positive, got {tol}")
    d = x.shape[0]
    k = others.shape[0]
    if k == 0:
        return SeparabilityCertificate(
            "separable", "lp", float("inf"), hyperplane=x.copy()
        )
    # tolerance scales with the instance (norms are <= 1 for shell clouds,
    # so effectively absolute there)
    scale = max(float(np.abs(others).max(initial=0.0)), float(np.abs(x).max(initial=0.0)))
    tol_eff = tol * scale if scale > 0.0 else tol

    # min sum(u) + sum(v)  s.t.  others.T @ lam + u - v = x,  sum(lam) = 1
    n_var = k + 2 * d
    A = np.zeros((d + 1, n_var))
    A[:d, :k] = others.T
    A[:d, k : k + d] = np.eye(d)
    A[:d, k + d :] = -np.eye(d)
    A[d, :k] = 1.0
    b = np.concatenate([x, [1.0]])
    c = np.concatenate([np.zeros(k), np.ones(2 * d)])
    result = solve_standard_form(c, A, b, max_pivots=_pivot_cap(k, d))
    if result.status != "optimal":
        # the program is feasible by construction; anything else is numeric
        raise LPStallError("phase 1 failed on a feasible hull program")

    margin_star = result.objective
    if margin_star > tol_eff:
        normal = result.duals[:d].copy()
        peak = float(np.abs(normal).max())
        if peak > 1.0:  # rounding can poke the box constraint by ~1e-15
            normal /= peak
        achieved = float(np.min((x - others) @ normal))
        return SeparabilityCertificate("separable", "lp", achieved, hyperplane=normal)
    lam = result.x[:k].copy()
    np.maximum(lam, 0.0, out=lam)
    return SeparabilityCertificate(
        "not_separable", "lp", float(margin_star), coefficients=lam
    )


def linearly_separable_point(
    i: int, cloud: PointCloud, tol: float = DEFAULT_TOL
) -> SeparabilityCertificate:
    """Is point i outside the convex hull of the rest of the cloud?"""
    i = _check_index(i, cloud.n)
    return lp_point_vs_set(cloud.points[i], _others(cloud.points, i), tol)


def linearly_separable_set(
    cloud: PointCloud, tol: float = DEFAULT_TOL, verdict_only: bool = False
) -> SetReport:
    """Linear 1-convexity with the Fisher pre-screen.

    Points that pass the Fisher check are recorded separable with
    method='fisher' and no LP runs (Fisher separability implies linear
    separability).  verdict_only permits early exit at the first
    not-separable point.
    """
    pts = cloud.points
    margins = _fisher_margins(pts)
    flags = _fisher_strict_flags(pts, margins)
    certs: list[SeparabilityCertificate] = []
    first_failure = None
    lp_calls = 0
    skipped = 0
    for i in range(cloud.n):
        if flags[i]:
            skipped += 1
            certs.append(
                SeparabilityCertificate(
                    "separable", "fisher", float(margins[i]), hyperplane=pts[i].copy()
                )
            )
            continue
        lp_calls += 1
        cert = lp_point_vs_set(pts[i], _others(pts, i), tol)
        certs.append(cert)
        if not cert.separable:
            if first_failure is None:
                first_failure = i
            if verdict_only:
                break
    return SetReport(tuple(certs), first_failure is None, first_failure, lp_calls, skipped)


# ---------------------------------------------------------------------------
# certificate re-checking


def verify_certificate(
    cert: SeparabilityCertificate,
    x: np.ndarray,
    others: np.ndarray,
    tol: float = DEFAULT_TOL,
    eps: float = 1e-9,
) -> bool:
    """Re-check a certificate by direct arithmetic.

    Separable with hyperplane A: (A, x) > (A, y) + margin * (1 - eps) for all
    y.  Not separable with coefficients: they are nonnegative, sum to 1
    within tolerance, and reconstruct x within 10 * tol.  Verdicts without a
    witness (vacuous separations, exhaustive oracle proofs, Fisher failures)
    verify trivially.
    """
    x = np.asarray(x, dtype=np.float64)
    others = np.asarray(others, dtype=np.float64)
    if cert.separable and cert.hyperplane is not None:
        if len(others) == 0:
            return True
        lhs = float(cert.hyperplane @ x)
        rhs = others @ cert.hyperplane
        slack = min(cert.margin, np.finfo(np.float64).max) * (1.0 - eps)
        return bool(np.all(lhs > rhs + slack))
    if not cert.separable and cert.coefficients is not None:
        lam = np.asarray(cert.coefficients, dtype=np.float64)
        if lam.shape[0] != len(others) or bool(np.any(lam < 0.0)):
            return False
        if abs(float(lam.sum()) - 1.0) > 1e-7:
            return False
        recon = lam @ others
        return bool(np.linalg.norm(recon - x) <= 10.0 * tol)
    return cert.hyperplane is None and cert.coefficients is None
