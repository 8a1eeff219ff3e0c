"""Closed-form separability bounds for uniform samples in a spherical shell.

Two families, both evaluated in log-space so that dimensions in the hundreds
neither overflow nor underflow:

* probability lower bounds ``p*_lb`` -- how likely a random set (or one extra
  point against a random set) is separable, as a function of (d, r, n);
* admissible-count thresholds ``n_admissible`` -- how many points can be drawn
  while keeping the failure probability below a budget ``theta``.

Every result carries its pre-clamp value and a domain status, because several
formulas are stated only for ``0 < r < 1`` and one degenerates at ``r = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "BOUND_IDS",
    "PROBABILITY_BOUND_IDS",
    "COUNT_BOUND_IDS",
    "BoundQuery",
    "BoundResult",
    "p1_linear_lb",
    "p_linear_lb",
    "p1_fisher_lb",
    "p_fisher_lb",
    "n_admissible",
    "evaluate_bound",
]

PROBABILITY_BOUND_IDS = (
    "p1_linear_lb",
    "p_linear_lb",
    "p1_fisher_lb",
    "p_fisher_lb",
)

COUNT_BOUND_IDS = (
    "eq1_n_fisher",
    "n1_fisher",
    "n_fisher",
    "n1_linear",
    "n_linear",
)

BOUND_IDS = PROBABILITY_BOUND_IDS + COUNT_BOUND_IDS

STATUS_OK = "ok"
STATUS_OUTSIDE = "outside_stated_domain"
STATUS_UNDEFINED = "undefined"


@dataclass(frozen=True)
class BoundQuery:
    """Validated parameter tuple shared by all bound evaluations.

    Attributes:
        d: ambient dimension, integer >= 1.
        r: inner shell radius, 0 <= r < 1.
        n: set cardinality (probability bounds only), integer >= 0.
        theta: failure budget in (0, 1) (count bounds only), or None.
    """

    d: int
    r: float = 0.0
    n: int = 0
    theta: float | None = None

    def __post_init__(self):
        if isinstance(self.d, bool) or not float(self.d).is_integer():
            raise DomainError(f"dimension must be an integer, got {self.d!r}")
        if int(self.d) < 1:
            raise DomainError(f"dimension must be >= 1, got {self.d}")
        if isinstance(self.n, bool) or not float(self.n).is_integer():
            raise DomainError(f"point count must be an integer, got {self.n!r}")
        if int(self.n) < 0:
            raise DomainError(f"point count must be >= 0, got {self.n}")
        r = float(self.r)
        if not (0.0 <= r < 1.0) or math.isnan(r):
            raise DomainError(f"inner radius must satisfy 0 <= r < 1, got {self.r!r}")
        if self.theta is not None:
            theta = float(self.theta)
            if not (0.0 < theta < 1.0) or math.isnan(theta):
                raise DomainError(
                    f"failure budget theta must satisfy 0 < theta < 1, got {self.theta!r}"
                )
            object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "r", r)

    def _require_theta(self) -> float:
        if self.theta is None:
            raise DomainError("this bound needs a failure budget theta in (0, 1)")
        return self.theta


@dataclass(frozen=True)
class BoundResult:
    """Outcome of one bound evaluation.

    Attributes:
        bound_id: which formula produced this result.
        value: the usable number -- probability clamped to [0, 1], or the
            nonnegative real count threshold.
        raw_value: pre-clamp value (may be negative, infinite, or NaN).
        domain_status: 'ok', 'outside_stated_domain', or 'undefined'.
        log_raw: natural log of raw_value when that is positive, else None.
            Survives even when raw_value itself under- or overflows.
        max_admissible_n: count bounds only -- the largest integer strictly
            below value (the bounds are strict inequalities); None when the
            threshold is infinite or undefined.
        note: human-readable qualifier, e.g. why a clamp fired.
    """

    bound_id: str
    value: float
    raw_value: float
    domain_status: str
    log_raw: float | None = None
    max_admissible_n: int | None = None
    note: str = ""


def _exp_or_inf(a: float) -> float:
    try:
        return math.exp(a)
    except OverflowError:
        return math.inf


def _log_r(r: float) -> float:
    """log r, keeping full relative accuracy as r -> 1: log1p(r - 1) with the
    subtraction exact for r >= 0.5.  Below 0.5 plain log is well conditioned
    (and r - 1.0 could round to -1.0 for denormal-small r)."""
    if r < 0.5:
        return math.log(r)
    return math.log1p(r - 1.0)


def log_one_minus_r_sq(r: float) -> float:
    """log(1 - r^2) evaluated as log(1-r) + log(1+r), avoiding the rounding of
    r*r; agrees with exact arithmetic on the binary value of r."""
    return math.log1p(-r) + math.log1p(r)


def _one_minus_r_pow_d(r: float, d: int) -> float:
    """1 - r^d without cancellation as r -> 1."""
    if r == 0.0:
        return 1.0
    return -math.expm1(d * _log_r(r))


def _strictly_below(threshold: float) -> int | None:
    """Largest integer strictly below a positive real; exact integers step down."""
    if not math.isfinite(threshold):
        return None
    f = math.floor(threshold)
    n = int(f) - 1 if threshold == f else int(f)
    return max(n, 0)


def p1_linear_lb(q: BoundQuery) -> BoundResult:
    """Lower bound on P(one extra point is linearly separable from n others).

    value = max(0, 1 - n / 2^d); independent of r.
    """
    raw = 1.0 - math.ldexp(float(q.n), -q.d)
    note = "" if raw >= 0.0 else "bound is vacuous here; clamped to 0"
    return BoundResult(
        bound_id="p1_linear_lb",
        value=min(1.0, max(0.0, raw)),
        raw_value=raw,
        domain_status=STATUS_OK,
        log_raw=math.log(raw) if raw > 0.0 else None,
        note=note,
    )


def p_linear_lb(q: BoundQuery) -> BoundResult:
    """Lower bound on P(every point of a random n-set is linearly separable).

    value = max(0, 1 - n(n-1) / 2^d); independent of r.
    """
    pairs = q.n * (q.n - 1)
    raw = 1.0 - math.ldexp(float(pairs), -q.d)
    note = "" if raw >= 0.0 else "bound is vacuous here; clamped to 0"
    return BoundResult(
        bound_id="p_linear_lb",
        value=min(1.0, max(0.0, raw)),
        raw_value=raw,
        domain_status=STATUS_OK,
        log_raw=math.log(raw) if raw > 0.0 else None,
        note=note,
    )


def p1_fisher_lb(q: BoundQuery) -> BoundResult:
    """Lower bound on P(one extra point is Fisher-separable from n others).

    value = (1 - r^d) * (1 - (1 - r^2)^(d/2) / 2)^n, the n-th power taken as
    exp(n * log1p(...)) so large n cannot underflow prematurely.
    """
    shell_mass = _one_minus_r_pow_d(q.r, q.d)
    log_half_width = 0.5 * q.d * log_one_minus_r_sq(q.r)
    tail_log = q.n * math.log1p(-0.5 * math.exp(log_half_width))
    log_raw = math.log(shell_mass) + tail_log
    raw = math.exp(log_raw)
    return BoundResult(
        bound_id="p1_fisher_lb",
        value=min(1.0, max(0.0, raw)),
        raw_value=raw,
        domain_status=STATUS_OK if q.r > 0.0 else STATUS_OUTSIDE,
        log_raw=log_raw,
    )


def p_fisher_lb(q: BoundQuery) -> BoundResult:
    """Lower bound on P(every point of a random n-set is Fisher-separable).

    value = [(1 - r^d) * (1 - (n-1)(1 - r^2)^(d/2) / 2)]^n when the bracket is
    positive, else 0.  The bracket goes negative for small d and large n; the
    clamp is recorded in the note and the signed power kept as raw_value.
    """
    status = STATUS_OK if q.r > 0.0 else STATUS_OUTSIDE
    if q.n == 0:
        return BoundResult("p_fisher_lb", 1.0, 1.0, status, log_raw=0.0)
    shell_mass = _one_minus_r_pow_d(q.r, q.d)
    half_width = 0.5 * math.exp(0.5 * q.d * log_one_minus_r_sq(q.r))
    crowding = (q.n - 1) * half_width
    if crowding < 1.0:
        log_base = math.log(shell_mass) + math.log1p(-crowding)
        log_raw = q.n * log_base
        raw = math.exp(log_raw)
        return BoundResult(
            bound_id="p_fisher_lb",
            value=min(1.0, max(0.0, raw)),
            raw_value=raw,
            domain_status=status,
            log_raw=log_raw,
        )
    base = shell_mass * (1.0 - crowding)
    if base == 0.0:
        raw = 0.0
    else:
        sign = 1.0 if q.n % 2 == 0 else -1.0
        raw = sign * _exp_or_inf(q.n * math.log(-base))
    return BoundResult(
        bound_id="p_fisher_lb",
        value=0.0,
        raw_value=raw,
        domain_status=status,
        log_raw=None,
        note="inner factor nonpositive; clamped to 0",
    )


def _log_sqrt_one_plus_exp(a: float) -> float:
    """log(1 + sqrt(1 + exp(a))), stable for arbitrarily large a."""
    if a <= 700.0:
        return math.log1p(math.sqrt(1.0 + math.exp(a)))
    # sqrt(1 + e^a) = e^(a/2) sqrt(1 + e^-a); expand around e^-a = 0.
    half = math.exp(-0.5 * a)
    return 0.5 * a + math.log1p(half + 0.5 * half * half)


def _eq1_n_fisher(q: BoundQuery) -> BoundResult:
    """Sharpest Fisher count threshold, in its cancellation-free form.

    The literal statement n < (r/sqrt(1-r^2))^d * (sqrt(1 + 2 theta (1-r^2)^(d/2)
    / r^(2d)) - 1) subtracts nearly equal quantities once the square root is
    close to 1.  Multiplying by the conjugate gives the equivalent

        n < 2 theta / (r^d * (sqrt(1 + 2 theta s^d) + 1)),   s = sqrt(1-r^2)/r^2,

    which is evaluated here entirely in logs.  Undefined at r = 0.
    """
    theta = q._require_theta()
    if q.r == 0.0:
        return BoundResult(
            bound_id="eq1_n_fisher",
            value=math.nan,
            raw_value=math.nan,
            domain_status=STATUS_UNDEFINED,
            note="threshold divides by r; no finite value at r = 0",
        )
    log_r = _log_r(q.r)
    log_s = 0.5 * log_one_minus_r_sq(q.r) - 2.0 * log_r
    log_numer = math.log(2.0 * theta)
    log_denom_tail = _log_sqrt_one_plus_exp(log_numer + q.d * log_s)
    log_raw = log_numer - q.d * log_r - log_denom_tail
    raw = _exp_or_inf(log_raw)
    return BoundResult(
        bound_id="eq1_n_fisher",
        value=raw,
        raw_value=raw,
        domain_status=STATUS_OK,
        log_raw=log_raw,
        max_admissible_n=_strictly_below(raw),
    )


def _n1_fisher(q: BoundQuery) -> BoundResult:
    """Count threshold n < theta / (1 - r^2)^(d/2)."""
    theta = q._require_theta()
    raw = theta * _exp_or_inf(-0.5 * q.d * log_one_minus_r_sq(q.r))
    return BoundResult(
        bound_id="n1_fisher",
        value=raw,
        raw_value=raw,
        domain_status=STATUS_OK if q.r > 0.0 else STATUS_OUTSIDE,
        log_raw=math.log(theta) - 0.5 * q.d * log_one_minus_r_sq(q.r),
        max_admissible_n=_strictly_below(raw),
    )


def _n_fisher(q: BoundQuery) -> BoundResult:
    """Count threshold n < sqrt(theta) / (1 - r^2)^(d/4)."""
    theta = q._require_theta()
    raw = math.sqrt(theta) * _exp_or_inf(-0.25 * q.d * log_one_minus_r_sq(q.r))
    return BoundResult(
        bound_id="n_fisher",
        value=raw,
        raw_value=raw,
        domain_status=STATUS_OK if q.r > 0.0 else STATUS_OUTSIDE,
        log_raw=0.5 * math.log(theta) - 0.25 * q.d * log_one_minus_r_sq(q.r),
        max_admissible_n=_strictly_below(raw),
    )


def _n1_linear(q: BoundQuery) -> BoundResult:
    """Count threshold n < theta * 2^d; holds for every 0 <= r < 1."""
    theta = q._require_theta()
    log_raw = math.log(theta) + q.d * math.log(2.0)
    try:
        raw = math.ldexp(theta, q.d)
    except OverflowError:
        raw = math.inf
    return BoundResult(
        bound_id="n1_linear",
        value=raw,
        raw_value=raw,
        domain_status=STATUS_OK,
        log_raw=log_raw,
        max_admissible_n=_strictly_below(raw),
    )


def _n_linear(q: BoundQuery) -> BoundResult:
    """Count threshold n < sqrt(theta * 2^d); holds for every 0 <= r < 1."""
    theta = q._require_theta()
    log_raw = 0.5 * (math.log(theta) + q.d * math.log(2.0))
    try:
        raw = math.sqrt(math.ldexp(theta, q.d))
    except OverflowError:
        raw = _exp_or_inf(log_raw)
    return BoundResult(
        bound_id="n_linear",
        value=raw,
        raw_value=raw,
        domain_status=STATUS_OK,
        log_raw=log_raw,
        max_admissible_n=_strictly_below(raw),
    )


_COUNT_DISPATCH = {
    "eq1_n_fisher": _eq1_n_fisher,
    "n1_fisher": _n1_fisher,
    "n_fisher": _n_fisher,
    "n1_linear": _n1_linear,
    "n_linear": _n_linear,
}

_PROBABILITY_DISPATCH = {
    "p1_linear_lb": p1_linear_lb,
    "p_linear_lb": p_linear_lb,
    "p1_fisher_lb": p1_fisher_lb,
    "p_fisher_lb": p_fisher_lb,
}


def n_admissible(bound_id: str, d: int, r: float, theta: float) -> BoundResult:
    """Evaluate one admissible-count threshold.

    Returns both the real-valued threshold and, in max_admissible_n, the
    largest integer n that satisfies the strict inequality n < threshold.
    """
    if bound_id not in _COUNT_DISPATCH:
        raise DomainError(
            f"unknown count bound {bound_id!r}; expected one of {sorted(_COUNT_DISPATCH)}"
        )
    return _COUNT_DISPATCH[bound_id](BoundQuery(d=d, r=r, theta=theta))


def evaluate_bound(
    bound_id: str,
    *,
    d: int,
    r: float = 0.0,
    n: int = 0,
    theta: float | None = None,
) -> BoundResult:
    """Evaluate any bound by id; the single entry point used by the CLI."""
    if bound_id in _PROBABILITY_DISPATCH:
        return _PROBABILITY_DISPATCH[bound_id](BoundQuery(d=d, r=r, n=n))
    if bound_id in _COUNT_DISPATCH:
        return _COUNT_DISPATCH[bound_id](BoundQuery(d=d, r=r, theta=theta))
    raise DomainError(f"unknown bound id {bound_id!r}; expected one of {sorted(BOUND_IDS)}")
