"""Seeded Monte Carlo grids: empirical separability frequencies over (d, r, n)
cells, with Wilson intervals and the matching theoretical lower bounds.

Determinism contract: every trial draws from its own RNG stream keyed by
(master_seed, mode, d, bits(r), n, trial index), so results are identical for
any worker count and any execution order.  Wall-clock fields are the only
nondeterministic output, and ``deterministic_timing`` zeroes them for
byte-identical reruns.
"""

from __future__ import annotations

import math
import struct
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .bounds import BoundQuery, p1_fisher_lb, p1_linear_lb, p_fisher_lb, p_linear_lb
from .errors import DomainError
from .geometry import LayerSpec, sample_layer
from .separability import (
    DEFAULT_TOL,
    fisher_point_vs_set,
    fisher_separable_set,
    linearly_separable_set,
    lp_point_vs_set,
)

__all__ = [
    "WILSON_Z",
    "MODES",
    "CHECK_KINDS",
    "ExperimentPlan",
    "ExperimentRecord",
    "frequency_interval",
    "run_point_level",
    "run_set_level",
    "run_experiment",
]

WILSON_Z = 1.959963984540054  # standard normal 97.5% quantile

MODES = ("point_level", "set_level")
CHECK_KINDS = ("linear", "fisher")


@dataclass(frozen=True)
class ExperimentPlan:
    """Validated description of one Monte Carlo sweep.

    Attributes:
        mode: 'point_level' (one extra point vs an n-cloud) or 'set_level'
            (the whole n-cloud at once).
        d_values: dimensions to sweep.
        r_values: inner radii to sweep.
        n: cloud size per trial.
        trials: trials per (d, r) cell.
        master_seed: 64-bit root of every RNG stream in the run.
        tol: LP margin tolerance passed through to the linear checks.
        check_kinds: which verdicts to record, subset of {'linear', 'fisher'}.
        workers: worker threads per cell; any value yields identical records.
        deterministic_timing: report wall_time_seconds as 0.0 so repeated runs
            serialize byte-identically.
    """

    mode: str
    d_values: tuple[int, ...]
    r_values: tuple[float, ...]
    n: int
    trials: int
    master_seed: int
    tol: float = DEFAULT_TOL
    check_kinds: tuple[str, ...] = CHECK_KINDS
    workers: int = 1
    deterministic_timing: bool = False

    def __post_init__(self):
        if self.mode not in MODES:
            raise DomainError(f"mode must be one of {MODES}, got {self.mode!r}")
        d_values = tuple(int(d) for d in self.d_values)
        r_values = tuple(float(r) for r in self.r_values)
        if not d_values or not r_values:
            raise DomainError("d and r grids must be non-empty")
        for d in d_values:
            for r in r_values:
                LayerSpec(d=d, r=r)  # validates every cell up front
        if isinstance(self.n, bool) or not float(self.n).is_integer() or int(self.n) < 1:
            raise DomainError(f"cloud size n must be an integer >= 1, got {self.n!r}")
        if isinstance(self.trials, bool) or not float(self.trials).is_integer() or int(self.trials) < 1:
            raise DomainError(f"trials must be an integer >= 1, got {self.trials!r}")
        seed = self.master_seed
        if isinstance(seed, bool) or not isinstance(seed, int) or not (0 <= seed < 2**64):
            raise DomainError(f"master_seed must be an integer in [0, 2^64), got {seed!r}")
        tol = float(self.tol)
        if not (tol > 0.0) or not math.isfinite(tol):
            raise DomainError(f"tol must be a positive finite real, got {self.tol!r}")
        kinds = tuple(k for k in CHECK_KINDS if k in tuple(self.check_kinds))
        if not kinds or set(self.check_kinds) - set(CHECK_KINDS):
            raise DomainError(
                f"check_kinds must be a non-empty subset of {CHECK_KINDS}, got {self.check_kinds!r}"
            )
        if isinstance(self.workers, bool) or not float(self.workers).is_integer() or int(self.workers) < 1:
            raise DomainError(f"workers must be an integer >= 1, got {self.workers!r}")
        object.__setattr__(self, "d_values", d_values)
        object.__setattr__(self, "r_values", r_values)
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "trials", int(self.trials))
        object.__setattr__(self, "tol", tol)
        object.__setattr__(self, "check_kinds", kinds)
        object.__setattr__(self, "workers", int(self.workers))


@dataclass(frozen=True)
class ExperimentRecord:
    """One grid cell's results: frequencies, intervals, bounds, accounting."""

    d: int
    r: float
    n: int
    trials: int
    freq_linear: float
    freq_fisher: float
    ci_linear: tuple[float, float]
    ci_fisher: tuple[float, float]
    bound_linear: float
    bound_fisher: float
    wall_time_seconds: float
    lp_calls: int
    lp_skipped_by_fisher: int


def frequency_interval(successes: int, trials: int) -> tuple[float, float]:
    """95% Wilson score interval for a binomial frequency.

    The boundary cases pin exactly: zero successes give low = 0.0 and full
    successes give high = 1.0.
    """
    if isinstance(trials, bool) or not float(trials).is_integer() or int(trials) < 1:
        raise DomainError(f"trials must be an integer >= 1, got {trials!r}")
    if isinstance(successes, bool) or not float(successes).is_integer():
        raise DomainError(f"successes must be an integer, got {successes!r}")
    successes, trials = int(successes), int(trials)
    if not 0 <= successes <= trials:
        raise DomainError(f"successes must lie in [0, {trials}], got {successes}")
    p_hat = successes / trials
    z_sq = WILSON_Z * WILSON_Z
    den = 1.0 + z_sq / trials
    center = (p_hat + z_sq / (2.0 * trials)) / den
    half = (WILSON_Z / den) * math.sqrt(
        p_hat * (1.0 - p_hat) / trials + z_sq / (4.0 * trials * trials)
    )
    low = 0.0 if successes == 0 else max(0.0, center - half)
    high = 1.0 if successes == trials else min(1.0, center + half)
    return low, high


def _trial_seed(plan: ExperimentPlan, d: int, r: float, trial_idx: int) -> int:
    """Independent 64-bit seed per (seed, mode, cell, trial); r enters by its
    bits so distinct radii never collide after float formatting."""
    r_bits = struct.unpack("<Q", struct.pack("<d", r))[0]
    mode_tag = MODES.index(plan.mode)
    seq = np.random.SeedSequence((plan.master_seed, mode_tag, d, r_bits, plan.n, trial_idx))
    return int(seq.generate_state(1, dtype=np.uint64)[0])


def _point_trial(plan, layer, trial_idx):
    cloud = sample_layer(layer, plan.n + 1, _trial_seed(plan, layer.d, layer.r, trial_idx))
    query = cloud.points[-1]
    others = cloud.points[:-1]
    # Fisher is always evaluated: it is the verdict for one kind and the
    # pre-screen for the other.
    fisher_ok = fisher_point_vs_set(query, others).separable
    linear_ok = False
    lp_calls = lp_skipped = 0
    if "linear" in plan.check_kinds:
        if fisher_ok:
            linear_ok, lp_skipped = True, 1
        else:
            lp_calls = 1
            linear_ok = lp_point_vs_set(query, others, tol=plan.tol).separable
    return linear_ok, fisher_ok, lp_calls, lp_skipped


def _set_trial(plan, layer, trial_idx):
    cloud = sample_layer(layer, plan.n, _trial_seed(plan, layer.d, layer.r, trial_idx))
    fisher_ok = linear_ok = False
    lp_calls = lp_skipped = 0
    if "fisher" in plan.check_kinds:
        fisher_ok = fisher_separable_set(cloud, verdict_only=True).all_separable
    if "linear" in plan.check_kinds:
        report = linearly_separable_set(cloud, tol=plan.tol, verdict_only=True)
        linear_ok = report.all_separable
        lp_calls = report.lp_calls
        lp_skipped = report.lp_skipped_by_fisher
    return linear_ok, fisher_ok, lp_calls, lp_skipped


def _cell_bounds(plan: ExperimentPlan, d: int, r: float) -> tuple[float, float]:
    query = BoundQuery(d=d, r=r, n=plan.n)
    if plan.mode == "point_level":
        return p1_linear_lb(query).value, p1_fisher_lb(query).value
    return p_linear_lb(query).value, p_fisher_lb(query).value


def _run_cell(plan: ExperimentPlan, d: int, r: float, trial_fn) -> ExperimentRecord:
    layer = LayerSpec(d=d, r=r)
    start = time.perf_counter()
    if plan.workers > 1:
        with ThreadPoolExecutor(max_workers=plan.workers) as pool:
            outcomes = list(pool.map(lambda t: trial_fn(plan, layer, t), range(plan.trials)))
    else:
        outcomes = [trial_fn(plan, layer, t) for t in range(plan.trials)]
    elapsed = 0.0 if plan.deterministic_timing else time.perf_counter() - start

    linear_hits = sum(1 for o in outcomes if o[0])
    fisher_hits = sum(1 for o in outcomes if o[1])
    lp_calls = sum(o[2] for o in outcomes)
    lp_skipped = sum(o[3] for o in outcomes)
    bound_linear, bound_fisher = _cell_bounds(plan, d, r)

    if "linear" in plan.check_kinds:
        freq_linear = linear_hits / plan.trials
        ci_linear = frequency_interval(linear_hits, plan.trials)
    else:
        freq_linear, ci_linear = math.nan, (math.nan, math.nan)
    if "fisher" in plan.check_kinds:
        freq_fisher = fisher_hits / plan.trials
        ci_fisher = frequency_interval(fisher_hits, plan.trials)
    else:
        freq_fisher, ci_fisher = math.nan, (math.nan, math.nan)

    return ExperimentRecord(
        d=d,
        r=r,
        n=plan.n,
        trials=plan.trials,
        freq_linear=freq_linear,
        freq_fisher=freq_fisher,
        ci_linear=ci_linear,
        ci_fisher=ci_fisher,
        bound_linear=bound_linear,
        bound_fisher=bound_fisher,
        wall_time_seconds=elapsed,
        lp_calls=lp_calls,
        lp_skipped_by_fisher=lp_skipped,
    )


def run_point_level(plan: ExperimentPlan) -> list[ExperimentRecord]:
    """One extra point against an n-cloud, per trial; estimates the chance a
    new sample is separable from what is already there."""
    if plan.mode != "point_level":
        raise DomainError(f"plan mode is {plan.mode!r}, expected 'point_level'")
    return [
        _run_cell(plan, d, r, _point_trial) for r in plan.r_values for d in plan.d_values
    ]


def run_set_level(plan: ExperimentPlan) -> list[ExperimentRecord]:
    """Whole-cloud separability per trial; estimates the chance every point of
    the sample is a hull vertex (linear) or Fisher-separable from the rest."""
    if plan.mode != "set_level":
        raise DomainError(f"plan mode is {plan.mode!r}, expected 'set_level'")
    return [
        _run_cell(plan, d, r, _set_trial) for r in plan.r_values for d in plan.d_values
    ]


def run_experiment(plan: ExperimentPlan) -> list[ExperimentRecord]:
    """Dispatch on plan.mode; the single entry point used by the CLI."""
    if plan.mode == "point_level":
        return run_point_level(plan)
    return run_set_level(plan)
