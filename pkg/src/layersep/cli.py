"""Command-line surface: argument parsing, subcommand dispatch, CSV emission.

Subcommands:
    sample       draw points from a spherical layer, emit coordinate CSV
    check        read a coordinate CSV, report separability verdicts
    bounds       evaluate named bounds on a (d, r) grid, emit long-format CSV
    asymptotics  evaluate one asymptotic law along a dimension sweep
    experiment   run a seeded Monte Carlo plan, emit the record CSV

Grids accept comma lists and inclusive ``start:stop:step`` ranges, mixed
freely ("1:10:1,20,40").  All reals are rendered with 17 significant digits,
so every emitted CSV parses back bit-exactly.

Exit codes: 0 success, 2 usage error, 3 domain error, 4 LP diagnostic.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from contextlib import contextmanager
from dataclasses import dataclass, field

import numpy as np

from . import asymptotics as asymptotics_mod
from .bounds import BOUND_IDS, COUNT_BOUND_IDS, evaluate_bound
from .errors import DomainError, EnumerationLimitError, LPStallError
from .experiments import ExperimentPlan, run_experiment
from .geometry import LayerSpec, PointCloud, sample_layer
from .separability import (
    DEFAULT_TOL,
    fisher_point_vs_set,
    fisher_separable_set,
    linearly_separable_set,
    lp_point_vs_set,
)

__all__ = [
    "EXIT_OK",
    "EXIT_USAGE",
    "EXIT_DOMAIN",
    "EXIT_LP",
    "RECORD_HEADER",
    "BOUND_CURVE_HEADER",
    "RunConfig",
    "parse_args",
    "emit_records",
    "emit_bound_curves",
    "main",
    "entrypoint",
]

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_LP = 4

RECORD_HEADER = (
    "d,r,n,trials,freq_linear,ci_linear_low,ci_linear_high,"
    "freq_fisher,ci_fisher_low,ci_fisher_high,bound_linear,bound_fisher,"
    "wall_time_seconds,lp_calls,lp_skipped_by_fisher"
)
BOUND_CURVE_HEADER = "bound_id,d,r,n,theta,value,domain_status"

DEFAULT_R_GRID = "0,0.5,0.8,0.9"
DEFAULT_D_GRID = {"point": "1:60:1", "set": "1:80:1"}
DEFAULT_N = {"point": 10000, "set": 1000}

_ASYMPTOTIC_OPS = (
    "eq1_asymptotic",
    "fisher_ratio_f_over_g",
    "layer_count_ratio",
    "fisher_gap_exact",
    "fisher_gap_asymptotic",
    "gap_ratio_linear_vs_fisher",
    "classify",
)
_THETA_OPS = {"eq1_asymptotic", "fisher_ratio_f_over_g", "layer_count_ratio"}
_GAP_OPS = {"fisher_gap_exact", "fisher_gap_asymptotic", "gap_ratio_linear_vs_fisher"}


@dataclass(frozen=True)
class RunConfig:
    """One validated CLI invocation: subcommand, its options, and the sink."""

    subcommand: str
    options: dict = field(default_factory=dict)
    output_path: str = "-"


def _fmt(x: float) -> str:
    """Round-trippable rendering: 17 significant digits, locale-free."""
    return format(float(x), ".17g")


def _parse_int_grid(text: str, fail) -> tuple[int, ...]:
    values: list[int] = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            fail(f"empty entry in grid {text!r}")
        if ":" in chunk:
            parts = chunk.split(":")
            if len(parts) != 3:
                fail(f"range must be start:stop:step, got {chunk!r}")
            try:
                start, stop, step = (int(p) for p in parts)
            except ValueError:
                fail(f"non-integer range bound in {chunk!r}")
            if step < 1:
                fail(f"range step must be >= 1, got {step}")
            if start > stop:
                fail(f"empty range {chunk!r} (start > stop)")
            values.extend(range(start, stop + 1, step))
        else:
            try:
                values.append(int(chunk))
            except ValueError:
                fail(f"expected an integer, got {chunk!r}")
    return tuple(values)


def _parse_float_grid(text: str, fail) -> tuple[float, ...]:
    values: list[float] = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            fail(f"empty entry in grid {text!r}")
        if ":" in chunk:
            parts = chunk.split(":")
            if len(parts) != 3:
                fail(f"range must be start:stop:step, got {chunk!r}")
            try:
                start, stop, step = (float(p) for p in parts)
            except ValueError:
                fail(f"non-numeric range bound in {chunk!r}")
            if not step > 0.0:
                fail(f"range step must be > 0, got {step}")
            if start > stop:
                fail(f"empty range {chunk!r} (start > stop)")
            count = int(math.floor((stop - start) / step + 1e-6))
            # snap accumulated values to 12 decimals so 0.1-steps land on
            # 0.3, not 0.30000000000000004
            values.extend(round(start + i * step, 12) for i in range(count + 1))
        else:
            try:
                values.append(float(chunk))
            except ValueError:
                fail(f"expected a real number, got {chunk!r}")
    return tuple(values)


def _parse_seed(text: str, fail) -> int:
    try:
        seed = int(text)
    except ValueError:
        fail(f"seed must be a decimal integer, got {text!r}")
    if not 0 <= seed < 2**64:
        fail(f"seed must lie in [0, 2^64), got {seed}")
    return seed


# ---------------------------------------------------------------------------
# emission


@contextmanager
def _open_dest(destination):
    if hasattr(destination, "write"):
        yield destination
    elif destination is None or destination == "-":
        yield sys.stdout
    else:
        handle = open(destination, "w", encoding="utf-8", newline="")
        try:
            yield handle
        finally:
            handle.close()


def emit_records(records, destination) -> None:
    """Write experiment records as CSV: fixed header, rows sorted by (r, d),
    reals at 17 significant digits, trailing newline."""
    rows = sorted(records, key=lambda rec: (rec.r, rec.d))
    with _open_dest(destination) as out:
        out.write(RECORD_HEADER + "\n")
        for rec in rows:
            out.write(
                ",".join(
                    (
                        str(rec.d),
                        _fmt(rec.r),
                        str(rec.n),
                        str(rec.trials),
                        _fmt(rec.freq_linear),
                        _fmt(rec.ci_linear[0]),
                        _fmt(rec.ci_linear[1]),
                        _fmt(rec.freq_fisher),
                        _fmt(rec.ci_fisher[0]),
                        _fmt(rec.ci_fisher[1]),
                        _fmt(rec.bound_linear),
                        _fmt(rec.bound_fisher),
                        _fmt(rec.wall_time_seconds),
                        str(rec.lp_calls),
                        str(rec.lp_skipped_by_fisher),
                    )
                )
                + "\n"
            )


def emit_bound_curves(bound_ids, d_values, r_values, n, theta, destination) -> None:
    """Write one long-format CSV row per (bound_id, d, r).

    Unused parameters render as empty fields (count bounds take theta, not n;
    probability bounds the reverse).  A row that fails its domain check gets
    value nan and domain_status 'error' instead of aborting the sweep.
    """
    with _open_dest(destination) as out:
        out.write(BOUND_CURVE_HEADER + "\n")
        for bound_id in bound_ids:
            is_count = bound_id in COUNT_BOUND_IDS
            n_field = "" if is_count else str(n)
            theta_field = _fmt(theta) if is_count else ""
            for r in r_values:
                for d in d_values:
                    try:
                        res = evaluate_bound(bound_id, d=d, r=r, n=n, theta=theta)
                        value, status = res.value, res.domain_status
                    except DomainError:
                        value, status = math.nan, "error"
                    out.write(
                        f"{bound_id},{d},{_fmt(r)},{n_field},{theta_field},"
                        f"{_fmt(value)},{status}\n"
                    )


# ---------------------------------------------------------------------------
# parsing


def parse_args(argv) -> RunConfig:
    """Parse and validate one CLI invocation.

    Every option is checked against the target module's preconditions here,
    before any work starts; violations exit with a usage error (code 2).
    """
    parser = argparse.ArgumentParser(
        prog="layersep",
        description="Separability of random points in a spherical layer: "
        "sampling, checks, bounds, asymptotics, experiments.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_sample = sub.add_parser("sample", help="draw points, emit coordinate CSV")
    p_sample.add_argument("--d", required=True, type=int, help="dimension")
    p_sample.add_argument("--r", type=float, default=0.0, help="inner radius in [0,1)")
    p_sample.add_argument("--n", required=True, type=int, help="number of points")
    p_sample.add_argument("--seed", default="0", help="RNG seed (default 0)")
    p_sample.add_argument("--output", default="-", help="file path or - for stdout")

    p_check = sub.add_parser("check", help="separability verdicts for a coordinate CSV")
    p_check.add_argument("--input", required=True, help="CSV of points, or - for stdin")
    p_check.add_argument("--mode", choices=("point", "set"), default="set",
                         help="point: last row vs the rest; set: every point vs the rest")
    p_check.add_argument("--kind", choices=("linear", "fisher", "both"), default="both")
    p_check.add_argument("--tol", type=float, default=DEFAULT_TOL, help="LP margin tolerance")

    p_bounds = sub.add_parser("bounds", help="evaluate bounds on a (d, r) grid")
    p_bounds.add_argument("--id", required=True,
                          help=f"comma list from {', '.join(BOUND_IDS)}, or all")
    p_bounds.add_argument("--d", required=True, help="dimension grid")
    p_bounds.add_argument("--r", default="0", help="inner radius grid (default 0)")
    p_bounds.add_argument("--n", type=int, default=0, help="set size (probability bounds)")
    p_bounds.add_argument("--theta", type=float, default=None,
                          help="failure budget in (0,1) (count bounds)")
    p_bounds.add_argument("--output", default="-", help="file path or - for stdout")

    p_asym = sub.add_parser("asymptotics", help="evaluate one asymptotic law over d")
    p_asym.add_argument("--op", required=True, choices=_ASYMPTOTIC_OPS)
    p_asym.add_argument("--d", default="1", help="dimension grid (ignored by classify)")
    p_asym.add_argument("--r", required=True, type=float, help="inner radius")
    p_asym.add_argument("--theta", type=float, default=None, help="failure budget")
    p_asym.add_argument("--n", type=int, default=None, help="point count (gap laws)")
    p_asym.add_argument("--context", choices=tuple(asymptotics_mod.CRITICAL_RADII),
                        default=None, help="which critical radius classify uses")

    p_exp = sub.add_parser("experiment", help="run a Monte Carlo plan, emit record CSV")
    p_exp.add_argument("--mode", required=True, choices=("point", "set"))
    p_exp.add_argument("--d", default=None,
                       help="dimension grid (default 1:60:1 point, 1:80:1 set)")
    p_exp.add_argument("--r", default=DEFAULT_R_GRID, help="inner radius grid")
    p_exp.add_argument("--n", type=int, default=None,
                       help="cloud size (default 10000 point, 1000 set)")
    p_exp.add_argument("--trials", type=int, default=60, help="trials per (d, r) cell")
    p_exp.add_argument("--seed", required=True, help="master seed (reproducibility is mandatory)")
    p_exp.add_argument("--tol", type=float, default=DEFAULT_TOL, help="LP margin tolerance")
    p_exp.add_argument("--kinds", default="linear,fisher",
                       help="comma subset of linear,fisher")
    p_exp.add_argument("--workers", type=int, default=1, help="threads per grid cell")
    p_exp.add_argument("--measure-timing", action="store_true",
                       help="report real wall times (breaks byte-identical reruns)")
    p_exp.add_argument("--output", default="-", help="file path or - for stdout")

    ns = parser.parse_args(argv)
    fail = parser.error  # prints usage, names the flag, exits 2

    if ns.subcommand == "sample":
        seed = _parse_seed(ns.seed, fail)
        try:
            layer = LayerSpec(d=ns.d, r=ns.r)
        except DomainError as exc:
            fail(str(exc))
        if ns.n < 0:
            fail(f"--n must be nonnegative, got {ns.n}")
        return RunConfig("sample", {"layer": layer, "n": ns.n, "seed": seed}, ns.output)

    if ns.subcommand == "check":
        if not ns.tol > 0.0 or not math.isfinite(ns.tol):
            fail(f"--tol must be a positive finite real, got {ns.tol}")
        kinds = ("linear", "fisher") if ns.kind == "both" else (ns.kind,)
        return RunConfig(
            "check",
            {"input": ns.input, "mode": ns.mode, "kinds": kinds, "tol": ns.tol},
        )

    if ns.subcommand == "bounds":
        ids = BOUND_IDS if ns.id == "all" else tuple(s.strip() for s in ns.id.split(","))
        for bound_id in ids:
            if bound_id not in BOUND_IDS:
                fail(f"unknown bound id {bound_id!r}; expected one of {', '.join(BOUND_IDS)}")
        d_values = _parse_int_grid(ns.d, fail)
        r_values = _parse_float_grid(ns.r, fail)
        if ns.n < 0:
            fail(f"--n must be nonnegative, got {ns.n}")
        needs_theta = [b for b in ids if b in COUNT_BOUND_IDS]
        if needs_theta and ns.theta is None:
            fail(f"--theta is required for count bounds ({', '.join(needs_theta)})")
        if ns.theta is not None and not 0.0 < ns.theta < 1.0:
            fail(f"--theta must lie in (0, 1), got {ns.theta}")
        return RunConfig(
            "bounds",
            {"ids": ids, "d_values": d_values, "r_values": r_values,
             "n": ns.n, "theta": ns.theta},
            ns.output,
        )

    if ns.subcommand == "asymptotics":
        d_values = _parse_int_grid(ns.d, fail)
        if ns.op in _THETA_OPS and ns.theta is None:
            fail(f"--theta is required for {ns.op}")
        if ns.op in _GAP_OPS and ns.n is None:
            fail(f"--n is required for {ns.op}")
        if ns.op == "classify" and ns.context is None:
            fail("--context is required for classify")
        return RunConfig(
            "asymptotics",
            {"op": ns.op, "d_values": d_values, "r": ns.r, "theta": ns.theta,
             "n": ns.n, "context": ns.context},
        )

    # experiment
    seed = _parse_seed(ns.seed, fail)
    mode = {"point": "point_level", "set": "set_level"}[ns.mode]
    d_text = ns.d if ns.d is not None else DEFAULT_D_GRID[ns.mode]
    n = ns.n if ns.n is not None else DEFAULT_N[ns.mode]
    kinds = tuple(s.strip() for s in ns.kinds.split(",") if s.strip())
    try:
        plan = ExperimentPlan(
            mode=mode,
            d_values=_parse_int_grid(d_text, fail),
            r_values=_parse_float_grid(ns.r, fail),
            n=n,
            trials=ns.trials,
            master_seed=seed,
            tol=ns.tol,
            check_kinds=kinds,
            workers=ns.workers,
            deterministic_timing=not ns.measure_timing,
        )
    except DomainError as exc:
        fail(str(exc))
    return RunConfig("experiment", {"plan": plan}, ns.output)


# ---------------------------------------------------------------------------
# subcommand runners


def _run_sample(cfg: RunConfig) -> None:
    layer, n = cfg.options["layer"], cfg.options["n"]
    cloud = sample_layer(layer, n, cfg.options["seed"])
    with _open_dest(cfg.output_path) as out:
        out.write(",".join(f"x{i + 1}" for i in range(layer.d)) + "\n")
        for row in cloud.points:
            out.write(",".join(_fmt(v) for v in row) + "\n")


def _read_point_matrix(source) -> np.ndarray:
    """Parse a coordinate CSV: optional header, one point per row."""
    if source == "-":
        rows = list(csv.reader(sys.stdin))
    else:
        with open(source, "r", encoding="utf-8", newline="") as handle:
            rows = list(csv.reader(handle))
    rows = [row for row in rows if row and any(cell.strip() for cell in row)]
    if not rows:
        raise DomainError(f"no data rows in {source!r}")
    try:
        [float(cell) for cell in rows[0]]
    except ValueError:
        rows = rows[1:]  # header line
        if not rows:
            raise DomainError(f"only a header in {source!r}") from None
    width = len(rows[0])
    data = []
    for idx, row in enumerate(rows):
        if len(row) != width:
            raise DomainError(f"row {idx} has {len(row)} fields, expected {width}")
        try:
            data.append([float(cell) for cell in row])
        except ValueError as exc:
            raise DomainError(f"row {idx}: {exc}") from None
    return np.asarray(data, dtype=np.float64)


def _run_check(cfg: RunConfig) -> None:
    pts = _read_point_matrix(cfg.options["input"])
    if not np.all(np.isfinite(pts)):
        raise DomainError("input points must be finite")
    # Both checks are invariant under uniform positive scaling, so data that
    # overflows the unit ball is shrunk to fit rather than rejected.
    max_norm = float(np.linalg.norm(pts, axis=1).max())
    if max_norm > 1.0:
        pts = pts / max_norm
    kinds, tol = cfg.options["kinds"], cfg.options["tol"]
    out = sys.stdout
    if cfg.options["mode"] == "point":
        if pts.shape[0] < 2:
            raise DomainError("point mode needs at least 2 rows (last row is the query)")
        query, others = pts[-1], pts[:-1]
        if "fisher" in kinds:
            cert = fisher_point_vs_set(query, others)
            out.write(f"kind=fisher separable={str(cert.separable).lower()}\n")
        if "linear" in kinds:
            cert = lp_point_vs_set(query, others, tol=tol)
            out.write(
                f"kind=linear separable={str(cert.separable).lower()}"
                f" margin={_fmt(cert.margin)}\n"
            )
        return
    cloud = PointCloud(layer=LayerSpec(d=pts.shape[1], r=0.0), points=pts, seed=0)
    if "fisher" in kinds:
        report = fisher_separable_set(cloud, verdict_only=True)
        first = "" if report.first_failure is None else str(report.first_failure)
        out.write(
            f"kind=fisher all_separable={str(report.all_separable).lower()}"
            f" first_failure={first}\n"
        )
    if "linear" in kinds:
        report = linearly_separable_set(cloud, tol=tol, verdict_only=True)
        first = "" if report.first_failure is None else str(report.first_failure)
        out.write(
            f"kind=linear all_separable={str(report.all_separable).lower()}"
            f" first_failure={first} lp_calls={report.lp_calls}"
            f" lp_skipped_by_fisher={report.lp_skipped_by_fisher}\n"
        )


def _format_bound_line(res, d, r, n, theta) -> str:
    is_count = res.bound_id in COUNT_BOUND_IDS
    parts = [
        f"bound_id={res.bound_id}",
        f"d={d}",
        f"r={_fmt(r)}",
        f"theta={_fmt(theta)}" if is_count else f"n={n}",
        f"value={_fmt(res.value)}",
        f"raw_value={_fmt(res.raw_value)}",
        f"domain_status={res.domain_status}",
    ]
    if is_count:
        admissible = "" if res.max_admissible_n is None else str(res.max_admissible_n)
        parts.append(f"max_admissible_n={admissible}")
    if res.note:
        parts.append(f'note="{res.note}"')
    return " ".join(parts)


def _run_bounds(cfg: RunConfig) -> None:
    o = cfg.options
    single = len(o["ids"]) == 1 and len(o["d_values"]) == 1 and len(o["r_values"]) == 1
    if single and cfg.output_path == "-":
        res = evaluate_bound(
            o["ids"][0], d=o["d_values"][0], r=o["r_values"][0], n=o["n"], theta=o["theta"]
        )
        sys.stdout.write(
            _format_bound_line(res, o["d_values"][0], o["r_values"][0], o["n"], o["theta"])
            + "\n"
        )
        return
    emit_bound_curves(
        o["ids"], o["d_values"], o["r_values"], o["n"], o["theta"], cfg.output_path
    )


def _run_asymptotics(cfg: RunConfig) -> None:
    o = cfg.options
    op, r, theta, n = o["op"], o["r"], o["theta"], o["n"]
    out = sys.stdout
    if op == "classify":
        regime = asymptotics_mod.classify_radius(r, o["context"])
        out.write(
            f"op=classify context={regime.context} r={_fmt(r)}"
            f" regime={regime.regime} critical_value={_fmt(regime.critical_value)}\n"
        )
        return
    for d in o["d_values"]:
        prefix = f"op={op} d={d} r={_fmt(r)}"
        if op == "eq1_asymptotic":
            v = asymptotics_mod.eq1_asymptotic(r, theta, d)
            out.write(
                f"{prefix} theta={_fmt(theta)} regime={v.regime.regime}"
                f" value={_fmt(v.value)} log_value={_fmt(v.log_value)}\n"
            )
        elif op == "fisher_gap_exact":
            gap, log_gap = asymptotics_mod.fisher_gap_exact(d, r, n)
            out.write(f"{prefix} n={n} gap={_fmt(gap)} log_gap={_fmt(log_gap)}\n")
        elif op == "fisher_gap_asymptotic":
            v = asymptotics_mod.fisher_gap_asymptotic(r, n, d)
            out.write(
                f"{prefix} n={n} regime={v.regime.regime}"
                f" value={_fmt(v.value)} log_value={_fmt(v.log_value)}\n"
            )
        else:
            if op == "fisher_ratio_f_over_g":
                law = asymptotics_mod.fisher_ratio_f_over_g(r, theta, d)
                param = f"theta={_fmt(theta)}"
            elif op == "layer_count_ratio":
                law = asymptotics_mod.layer_count_ratio(r, theta, d)
                param = f"theta={_fmt(theta)}"
            else:
                law = asymptotics_mod.gap_ratio_linear_vs_fisher(r, n, d)
                param = f"n={n}"
            out.write(
                f"{prefix} {param} regime={law.regime.regime}"
                f" exact={_fmt(law.exact)} approximant={_fmt(law.approximant)}"
                f" limit_value={_fmt(law.limit_value)} limit_tag={law.limit_tag}\n"
            )


def _run_experiment(cfg: RunConfig) -> None:
    records = run_experiment(cfg.options["plan"])
    emit_records(records, cfg.output_path)


_RUNNERS = {
    "sample": _run_sample,
    "check": _run_check,
    "bounds": _run_bounds,
    "asymptotics": _run_asymptotics,
    "experiment": _run_experiment,
}


def main(argv=None) -> int:
    """Run one invocation; returns the process exit code."""
    try:
        cfg = parse_args(sys.argv[1:] if argv is None else argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code is None else int(exc.code)
    try:
        _RUNNERS[cfg.subcommand](cfg)
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (LPStallError, EnumerationLimitError) as exc:
        print(f"LP diagnostic: {exc}", file=sys.stderr)
        return EXIT_LP
    except OSError as exc:
        target = getattr(exc, "filename", None) or cfg.output_path
        print(f"write failed for {target}: {exc}", file=sys.stderr)
        return 1
    return EXIT_OK


def entrypoint() -> None:
    sys.exit(main())
