"""CLI surface: grammar, exit codes, and bit-exact CSV emission."""

import math

import numpy as np
import pytest

from layersep.bounds import evaluate_bound
from layersep.cli import (
    BOUND_CURVE_HEADER,
    EXIT_DOMAIN,
    EXIT_LP,
    EXIT_OK,
    EXIT_USAGE,
    RECORD_HEADER,
    emit_bound_curves,
    emit_records,
    main,
    parse_args,
)
from layersep.errors import LPStallError
from layersep.experiments import ExperimentPlan, run_experiment


def experiment_argv(*extra):
    return ["experiment", "--mode", "point", "--d", "3", "--r", "0.5",
            "--n", "10", "--trials", "4", "--seed", "11", *extra]


# ---------------------------------------------------------------------------
# grammar and parse_args


def test_range_grammar_int():
    cfg = parse_args(["experiment", "--mode", "set", "--d", "5:80:5",
                      "--r", "0,0.5,0.9", "--n", "12", "--trials", "2", "--seed", "42"])
    plan = cfg.options["plan"]
    assert plan.d_values == tuple(range(5, 81, 5))
    assert plan.d_values[-1] == 80  # stop is inclusive
    assert plan.r_values == (0.0, 0.5, 0.9)
    assert plan.mode == "set_level"


def test_range_grammar_mixed_and_float_snapping():
    cfg = parse_args(["bounds", "--id", "p1_linear_lb", "--d", "1:4:1,10,40",
                      "--r", "0:0.9:0.1", "--n", "100"])
    assert cfg.options["d_values"] == (1, 2, 3, 4, 10, 40)
    assert cfg.options["r_values"] == (0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)


def test_scalar_radius_parses_verbatim():
    cfg = parse_args(["bounds", "--id", "p1_fisher_lb", "--d", "5",
                      "--r", "0.8660254037844386", "--n", "10"])
    assert cfg.options["r_values"] == (0.8660254037844386,)


def test_experiment_defaults():
    cfg = parse_args(["experiment", "--mode", "point", "--seed", "1"])
    plan = cfg.options["plan"]
    assert plan.d_values == tuple(range(1, 61))
    assert plan.r_values == (0.0, 0.5, 0.8, 0.9)
    assert plan.n == 10000 and plan.trials == 60
    assert plan.deterministic_timing  # byte-identical reruns by default

    cfg = parse_args(["experiment", "--mode", "set", "--seed", "1", "--measure-timing"])
    plan = cfg.options["plan"]
    assert plan.d_values == tuple(range(1, 81))
    assert plan.n == 1000
    assert not plan.deterministic_timing


@pytest.mark.parametrize(
    "argv",
    [
        experiment_argv("--trials", "0"),
        ["experiment", "--mode", "point", "--d", "3", "--n", "10"],  # no seed
        ["experiment", "--mode", "orbit", "--seed", "1"],
        experiment_argv("--d", "5:1:1"),
        experiment_argv("--d", "1:10:0"),
        experiment_argv("--r", "0.5:0.4:0.1"),
        experiment_argv("--seed", "-3"),
        experiment_argv("--kinds", "linear,euclidean"),
        ["bounds", "--id", "p_linear_ub", "--d", "3"],
        ["bounds", "--id", "n1_fisher", "--d", "3"],  # count bound, no theta
        ["bounds", "--id", "n1_fisher", "--d", "3", "--theta", "1.5"],
        ["asymptotics", "--op", "eq1_asymptotic", "--r", "0.5"],  # no theta
        ["asymptotics", "--op", "fisher_gap_exact", "--r", "0.5"],  # no n
        ["asymptotics", "--op", "classify", "--r", "0.5"],  # no context
        ["bounds", "--id", "p_linear_lb", "--d", "3", "--frobnicate"],
        ["navigate"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    assert main(argv) == EXIT_USAGE
    capsys.readouterr()  # swallow argparse noise


def test_domain_error_exit_3(capsys):
    assert main(["asymptotics", "--op", "eq1_asymptotic", "--r", "0",
                 "--theta", "0.5", "--d", "10"]) == EXIT_DOMAIN
    assert "domain error" in capsys.readouterr().err


def test_lp_diagnostic_exit_4(tmp_path, capsys, monkeypatch):
    source = tmp_path / "pts.csv"
    source.write_text("0.5,0\n0,0.5\n0.1,0.1\n", encoding="utf-8")

    def stall(*args, **kwargs):
        raise LPStallError("simplex stalled")

    monkeypatch.setattr("layersep.cli.lp_point_vs_set", stall)
    assert main(["check", "--input", str(source), "--mode", "point",
                 "--kind", "linear"]) == EXIT_LP
    assert "LP diagnostic" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# bounds subcommand


def test_bounds_single_result_printed(capsys):
    assert main(["bounds", "--id", "p_linear_lb", "--d", "20", "--n", "1024"]) == EXIT_OK
    line = capsys.readouterr().out
    assert "bound_id=p_linear_lb" in line
    assert "value=0.0009765625" in line
    assert "domain_status=ok" in line


def test_bound_curviness_clamp_threshold(tmp_path):
    dest = tmp_path / "curves.csv"
    emit_bound_curves(("p1_linear_lb",), tuple(range(1, 41)), (0.0,), 10000, None, str(dest))
    lines = dest.read_text(encoding="utf-8").splitlines()
    assert lines[0] == BOUND_CURVE_HEADER
    assert len(lines) == 41
    rows = [line.split(",") for line in lines[1:]]
    for row in rows:
        d, value = int(row[1]), float(row[5])
        assert row[0] == "p1_linear_lb"
        assert row[3] == "10000" and row[4] == ""  # theta unused
        if d <= 13:
            assert value == 0.0  # 2^d <= 10000: bound clamps
        else:
            assert value > 0.0
    assert float(rows[13][5]) == 1.0 - 10000.0 / 16384.0  # first positive, d=14


def test_bound_curves_undefined_rows(tmp_path):
    dest = tmp_path / "eq1.csv"
    emit_bound_curves(("eq1_n_fisher",), (5, 10), (0.0,), 0, 0.5, str(dest))
    lines = dest.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 3
    for line in lines[1:]:
        row = line.split(",")
        assert row[6] == "undefined"
        assert math.isnan(float(row[5]))
        assert row[3] == "" and row[4] == "0.5"  # n unused for count bounds


def test_bound_curves_match_pointwise_evaluation(tmp_path):
    dest = tmp_path / "pf.csv"
    d_values = tuple(range(1, 81))
    emit_bound_curves(("p_fisher_lb",), d_values, (0.5,), 1000, None, str(dest))
    lines = dest.read_text(encoding="utf-8").splitlines()[1:]
    assert len(lines) == 80
    for line, d in zip(lines, d_values):
        emitted = float(line.split(",")[5])
        direct = evaluate_bound("p_fisher_lb", d=d, r=0.5, n=1000).value
        assert emitted == direct  # bit-exact passthrough


# ---------------------------------------------------------------------------
# record CSV emission


def small_records(**overrides):
    fields = dict(mode="point_level", d_values=(6, 3), r_values=(0.5, 0.0),
                  n=15, trials=6, master_seed=99, deterministic_timing=True)
    fields.update(overrides)
    return run_experiment(ExperimentPlan(**fields))


def test_emit_records_schema_and_order(tmp_path):
    dest = tmp_path / "records.csv"
    emit_records(small_records(), str(dest))
    text = dest.read_text(encoding="utf-8")
    assert text.endswith("\n")
    lines = text.splitlines()
    assert lines[0] == RECORD_HEADER
    assert len(lines) == 5
    keys = [(float(l.split(",")[1]), int(l.split(",")[0])) for l in lines[1:]]
    assert keys == sorted(keys)  # rows sorted by (r, d)
    for line in lines[1:]:
        assert len(line.split(",")) == 15


def test_emit_records_empty_and_repeatable(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    emit_records([], str(a))
    assert a.read_text(encoding="utf-8") == RECORD_HEADER + "\n"
    records = small_records()
    emit_records(records, str(a))
    emit_records(records, str(b))
    assert a.read_bytes() == b.read_bytes()


def test_record_csv_round_trip_bit_exact(tmp_path):
    records = small_records()
    dest = tmp_path / "rt.csv"
    emit_records(records, str(dest))
    lines = dest.read_text(encoding="utf-8").splitlines()[1:]
    by_key = {(rec.r, rec.d): rec for rec in records}
    assert len(lines) == len(by_key)
    for line in lines:
        f = line.split(",")
        rec = by_key[(float(f[1]), int(f[0]))]
        assert int(f[2]) == rec.n and int(f[3]) == rec.trials
        assert float(f[4]) == rec.freq_linear
        assert float(f[5]) == rec.ci_linear[0] and float(f[6]) == rec.ci_linear[1]
        assert float(f[7]) == rec.freq_fisher
        assert float(f[8]) == rec.ci_fisher[0] and float(f[9]) == rec.ci_fisher[1]
        assert float(f[10]) == rec.bound_linear and float(f[11]) == rec.bound_fisher
        assert float(f[12]) == rec.wall_time_seconds
        assert int(f[13]) == rec.lp_calls and int(f[14]) == rec.lp_skipped_by_fisher


def test_experiment_cli_byte_identical_across_workers(tmp_path):
    base = ["experiment", "--mode", "set", "--d", "2,10", "--r", "0,0.5",
            "--n", "40", "--trials", "8", "--seed", "314"]
    out1, out4 = tmp_path / "w1.csv", tmp_path / "w4.csv"
    assert main(base + ["--workers", "1", "--output", str(out1)]) == EXIT_OK
    assert main(base + ["--workers", "4", "--output", str(out4)]) == EXIT_OK
    assert out1.read_bytes() == out4.read_bytes()


# ---------------------------------------------------------------------------
# sample and check subcommands


def test_sample_deterministic_and_in_shell(tmp_path, capsys):
    argv = ["sample", "--d", "3", "--r", "0.5", "--n", "40", "--seed", "5"]
    assert main(argv) == EXIT_OK
    first = capsys.readouterr().out
    assert main(argv) == EXIT_OK
    assert capsys.readouterr().out == first
    lines = first.splitlines()
    assert lines[0] == "x1,x2,x3"
    assert len(lines) == 41
    pts = np.array([[float(v) for v in line.split(",")] for line in lines[1:]])
    norms = np.linalg.norm(pts, axis=1)
    assert norms.min() >= 0.5 - 1e-12 and norms.max() <= 1.0 + 1e-12


def test_check_set_mode_square_corners(tmp_path, capsys):
    source = tmp_path / "corners.csv"
    source.write_text("x1,x2\n0.9,0\n0,0.9\n-0.9,0\n0,-0.9\n", encoding="utf-8")
    assert main(["check", "--input", str(source)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "kind=fisher all_separable=true" in out
    assert "kind=linear all_separable=true" in out


def test_check_point_mode_interior_query(tmp_path, capsys):
    source = tmp_path / "interior.csv"
    rows = "9,0\n0,9\n-9,0\n0,-9\n0.5,0.5\n"  # scaled to fit the unit ball
    source.write_text(rows, encoding="utf-8")
    assert main(["check", "--input", str(source), "--mode", "point"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "kind=fisher separable=false" in out
    assert "kind=linear separable=false" in out


def test_check_rejects_ragged_rows(tmp_path, capsys):
    source = tmp_path / "ragged.csv"
    source.write_text("0.1,0.2\n0.3\n", encoding="utf-8")
    assert main(["check", "--input", str(source)]) == EXIT_DOMAIN
    capsys.readouterr()


# ---------------------------------------------------------------------------
# asymptotics subcommand


def test_asymptotics_sweep_lines(capsys):
    assert main(["asymptotics", "--op", "eq1_asymptotic", "--r", "0.9",
                 "--theta", "0.5", "--d", "10,20"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 2
    assert lines[0].startswith("op=eq1_asymptotic d=10 r=0.9")
    assert "regime=above_critical" in lines[0]


def test_asymptotics_ratio_law_line(capsys):
    assert main(["asymptotics", "--op", "gap_ratio_linear_vs_fisher", "--r", "0.8",
                 "--n", "10", "--d", "50"]) == EXIT_OK
    line = capsys.readouterr().out.strip()
    assert "limit_tag=diverges" in line
    assert "exact=" in line and "approximant=" in line
