import json
import math

import pytest

import rpnorm.cli as cli
from rpnorm.cli import (
    SCHEMA_FIELDS,
    SEED_ENV_VAR,
    CliConfig,
    format_report,
    main,
    parse_args,
    run,
)
from rpnorm.ensemble import ExperimentRecord


def make_record(**overrides):
    base = dict(
        experiment="circle-sq",
        degree=9,
        distribution="gaussian",
        samples=1000,
        seed=42,
        empirical=10.01,
        std_error=0.014,
        bound=10.0,
        bound_kind="two_sided",
        passed=True,
        wall_time_ms=0.0,
    )
    base.update(overrides)
    return ExperimentRecord(**base)


# ---------------------------------------------------------------------------
# argument parsing


def test_parse_verify_all_defaults(monkeypatch):
    monkeypatch.delenv(SEED_ENV_VAR, raising=False)
    config = parse_args(["verify-all"])
    assert config == CliConfig(subcommand="verify-all", threshold=2.0)
    assert config.seed == 42
    assert config.samples == 100000
    assert config.format == "table"


def test_parse_seed_forms(monkeypatch):
    monkeypatch.delenv(SEED_ENV_VAR, raising=False)
    assert parse_args(["circle", "--seed", "7"]).seed == 7
    assert parse_args(["circle", "--seed", "0xDEADBEEF"]).seed == 0xDEADBEEF
    with pytest.raises(SystemExit) as exc:
        parse_args(["circle", "--seed", "12abc"])
    assert exc.value.code == 2


def test_seed_env_fallback(monkeypatch):
    monkeypatch.setenv(SEED_ENV_VAR, "0xdead")
    assert parse_args(["circle"]).seed == 0xDEAD
    # an explicit flag beats the environment
    assert parse_args(["circle", "--seed", "5"]).seed == 5
    monkeypatch.setenv(SEED_ENV_VAR, "not-a-seed")
    with pytest.raises(SystemExit) as exc:
        parse_args(["circle"])
    assert exc.value.code == 2
    monkeypatch.delenv(SEED_ENV_VAR)
    assert parse_args(["circle"]).seed == 42


@pytest.mark.parametrize(
    "argv",
    [
        ["circle", "--samples", "1"],
        ["circle", "--degree", "-3"],
        ["circle", "--workers", "0"],
        ["circle", "--grid", "0"],
        ["tail"],  # threshold is required here
        ["tail", "--threshold", "-1"],
        ["circle", "--threshold", "2"],  # only tail/maxmod/verify-all take it
        ["no-such-subcommand"],
        ["poly", "--coeffs", "1,zebra", "--op", "max-mod"],
        ["poly", "--coeffs", "1,2", "--op", "filter"],  # filter needs --z
        ["poly", "--coeffs", "1,2", "--op", "filter", "--z", "what"],
    ],
)
def test_usage_errors_exit_2(argv, monkeypatch):
    monkeypatch.delenv(SEED_ENV_VAR, raising=False)
    with pytest.raises(SystemExit) as exc:
        parse_args(argv)
    assert exc.value.code == 2


def test_parse_poly_filter():
    config = parse_args(["poly", "--coeffs", "1,0,0,1", "--op", "filter", "--z", "0.5+0.5j"])
    assert config.subcommand == "poly"
    assert config.coeffs == (1.0, 0.0, 0.0, 1.0)
    assert config.z == 0.5 + 0.5j


# ---------------------------------------------------------------------------
# report formatting


def test_format_json_field_order_and_types():
    text = format_report([make_record()], "json")
    rows = json.loads(text)
    assert len(rows) == 1
    assert list(rows[0]) == list(SCHEMA_FIELDS)
    assert rows[0]["pass"] is True
    assert rows[0]["empirical"] == 10.01


def test_format_csv_header_and_round_trip():
    text = format_report([make_record(empirical=1.0 / 3.0)], "csv")
    lines = text.splitlines()
    assert lines[0] == "experiment,degree,distribution,samples,seed,empirical,std_error,bound,bound_kind,pass,wall_time_ms"
    cells = lines[1].split(",")
    row = dict(zip(SCHEMA_FIELDS, cells))
    # floats print via repr, so parsing the cell recovers the exact value
    assert float(row["empirical"]) == 1.0 / 3.0
    assert row["pass"] == "true"
    assert row["experiment"] == "circle-sq"


def test_format_table_marks_failures():
    text = format_report([make_record(passed=False, note="why it failed")], "table")
    assert "FAIL" in text
    assert "0/1 checks hold" in text
    assert "why it failed" in text


def test_format_report_rejects_bad_input():
    with pytest.raises(ValueError):
        format_report([], "table")
    with pytest.raises(ValueError, match="unknown format"):
        format_report([make_record()], "yaml")


# ---------------------------------------------------------------------------
# end-to-end runs


def run_captured(capsys, argv):
    code = main(argv)
    return code, capsys.readouterr().out


def test_verify_all_is_byte_identical(capsys, monkeypatch):
    monkeypatch.delenv(SEED_ENV_VAR, raising=False)
    argv = ["verify-all", "--samples", "3000", "--seed", "42", "--format", "csv"]
    code_a, out_a = run_captured(capsys, argv)
    code_b, out_b = run_captured(capsys, argv)
    assert code_a == code_b == 0
    assert out_a == out_b
    for line in out_a.splitlines()[1:]:
        assert line.split(",")[-1] == "0.0"  # wall_time_ms zeroed by default


def test_worker_count_leaves_output_unchanged(capsys):
    base = ["disc", "--samples", "4000", "--seed", "9", "--format", "csv"]
    _, one = run_captured(capsys, base + ["--workers", "1"])
    _, many = run_captured(capsys, base + ["--workers", "8"])
    assert one == many


def test_timings_flag_reports_real_times(capsys):
    argv = ["circle", "--samples", "2000", "--format", "json", "--timings"]
    code, out = run_captured(capsys, argv)
    assert code == 0
    assert all(row["wall_time_ms"] > 0.0 for row in json.loads(out))


def test_output_file_written(tmp_path, capsys):
    target = tmp_path / "report.csv"
    code = main(["circle", "--samples", "2000", "--format", "csv", "--output", str(target)])
    assert code == 0
    assert capsys.readouterr().out == ""
    text = target.read_text(encoding="utf-8")
    assert text.startswith("experiment,")
    assert len(text.splitlines()) == 3  # header + circle-sq + circle-abs


def test_unwritable_output_exits_3(tmp_path):
    missing = tmp_path / "no" / "such" / "dir" / "report.csv"
    code = main(["circle", "--samples", "2000", "--output", str(missing)])
    assert code == 3


def test_undersized_grid_exits_2_without_report(tmp_path, capsys):
    target = tmp_path / "report.csv"
    code = main(
        ["circle", "--samples", "2000", "--grid", "5", "--output", str(target)]
    )
    assert code == 2
    assert not target.exists()
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "error:" in captured.err


def test_failed_bound_exits_1(monkeypatch, capsys):
    monkeypatch.setattr(
        cli, "run_experiment", lambda spec, which, params: [make_record(passed=False)]
    )
    code, out = run_captured(capsys, ["circle", "--samples", "100"])
    assert code == 1
    assert "FAIL" in out


def test_subcommands_map_to_experiments(capsys):
    cases = {
        ("circle",): ["circle-sq", "circle-abs"],
        ("disc",): ["disc-sq", "disc-abs"],
        ("tail", "--threshold", "2"): ["markov-tail"],
        ("maxmod", "--dist", "uniform"): ["max-uniform"],
        ("maxmod",): ["max-gaussian"],
    }
    for argv, experiments in cases.items():
        _, out = run_captured(
            capsys, [*argv, "--samples", "1000", "--format", "json"]
        )
        assert [row["experiment"] for row in json.loads(out)] == experiments


def test_tail_run_respects_markov_bound(capsys):
    argv = ["tail", "--threshold", "2", "--samples", "50000", "--seed", "7", "--format", "json"]
    code, out = run_captured(capsys, argv)
    assert code == 0
    row = json.loads(out)[0]
    se = math.sqrt(row["empirical"] * (1 - row["empirical"]) / row["samples"])
    assert row["empirical"] <= 0.25 + 3 * se
    assert row["pass"] is True


def test_poly_circle_mean_sq(capsys):
    code, out = run_captured(capsys, ["poly", "--coeffs", "1,1", "--op", "circle-mean-sq"])
    assert code == 0
    assert float(out) == pytest.approx(2.0)


def test_poly_disc_mean_sq_shows_both_routes(capsys):
    code, out = run_captured(capsys, ["poly", "--coeffs", "1,1", "--op", "disc-mean-sq"])
    assert code == 0
    lines = dict(line.split(None, 1) for line in out.splitlines())
    assert float(lines["numeric"]) == pytest.approx(4.0 / 3.0)
    assert float(lines["closed"]) == pytest.approx(4.0 / 3.0)


def test_poly_max_mod_reports_bracket(capsys):
    code, out = run_captured(capsys, ["poly", "--coeffs", "1,-2,1", "--op", "max-mod"])
    assert code == 0
    lines = dict(line.split(None, 1) for line in out.splitlines())
    assert float(lines["value"]) == pytest.approx(4.0)
    assert float(lines["arg_theta"]) == pytest.approx(math.pi, abs=1e-4)
    assert float(lines["lower_bound"]) <= 4.0 <= float(lines["upper_bound"])


def test_poly_filter_output_parses_as_complex(capsys):
    argv = ["poly", "--coeffs", "1,0,0,1", "--op", "filter", "--z", "0.5+0.5j"]
    code, out = run_captured(capsys, argv)
    assert code == 0
    z = 0.5 + 0.5j
    assert complex(out.strip().strip("()")) == pytest.approx(1.0 + z**3)


def test_poly_bernstein(capsys):
    code, out = run_captured(capsys, ["poly", "--coeffs", "0,0,0,0,0,1", "--op", "bernstein"])
    assert code == 0
    assert float(out) == pytest.approx(5.0, rel=1e-6)
