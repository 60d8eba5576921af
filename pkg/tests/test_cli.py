"""End-to-end CLI tests: config validation, reports, determinism.

Configs are built as temp files because the CLI contract is file-based;
the bundled presets are exercised as-is.
"""

import csv
import io
import json
import math

import pytest

from rydgate.cli import (
    BUDGET_COLUMNS,
    LATTICE_COLUMNS,
    SWEEP_COLUMNS,
    check_cross_rules,
    cmd_budget,
    cmd_lattice,
    cmd_simulate,
    cmd_sweep_omega,
    load_config,
    main,
    preset_path,
    render_csv,
    render_json,
)
from rydgate.schemas import ConfigError, validate_config, validate_report

PRESETS = [
    "sequential_uniform",
    "sequential_lattice_crossover",
    "simultaneous_lattice_room_temp",
    "grover_uniform",
]


def write_config(tmp_path, payload, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


def uniform_cfg(**overrides):
    cfg = {
        "scheme": "sequential",
        "k": [2, 5],
        "omega10_mhz": 9200.0,
        "uniform": {"b_mhz": 52.0, "tau_us": 820.0, "label": "Cs 150s"},
        "frequencies": {"mode": "optimize"},
    }
    cfg.update(overrides)
    return cfg


# ----------------------------------------------------------------- presets

@pytest.mark.parametrize("name", PRESETS)
def test_bundled_presets_validate(name):
    cfg = load_config(preset_path(name))
    command = "budget"
    check_cross_rules(cfg, command)
    assert cfg["k"], name


def test_room_temp_preset_budget_rows():
    cfg = load_config(preset_path("simultaneous_lattice_room_temp"))
    report = cmd_budget(cfg)
    assert [row["k"] for row in report["rows"]] == [3, 8, 15, 24, 35]
    assert report["columns"] == list(BUDGET_COLUMNS["simultaneous"])
    k35 = report["rows"][-1]
    assert k35["duration_us"] == pytest.approx(0.9400641, rel=1e-6)
    assert k35["total"] == pytest.approx(0.14588604151728835, rel=1e-10)


# ------------------------------------------------------------- validation

def test_malformed_json_reports_line_and_column(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text('{"scheme": "sequential",\n "k": [1,]\n}', encoding="utf-8")
    code = main(["budget", "--config", str(path)])
    assert code == 2
    err = capsys.readouterr().err
    assert "line 2 column" in err


def test_empty_k_rejected(tmp_path, capsys):
    path = write_config(tmp_path, uniform_cfg(k=[]))
    assert main(["budget", "--config", str(path)]) == 2
    assert "k" in capsys.readouterr().err


def test_single_point_sweep_rejected(tmp_path, capsys):
    cfg = uniform_cfg(sweep={"omega_mhz": {"min": 1.0, "max": 2.0, "points": 1}})
    path = write_config(tmp_path, cfg)
    assert main(["sweep-omega", "--config", str(path)]) == 2
    assert "points" in capsys.readouterr().err


def test_uniform_and_lattice_together_rejected(tmp_path):
    cfg = uniform_cfg(
        lattice={"d_um": 1.0, "tau_us": 170.0},
        interaction={"c6_mhz_um6": 100.0},
    )
    with pytest.raises(ConfigError, match="exactly one"):
        check_cross_rules(load_config(write_config(tmp_path, cfg)), "budget")


def test_scheme_command_mismatches(tmp_path):
    sim_cfg = {
        "scheme": "simulate",
        "k": 1,
        "simulate": {"omega_mhz": 1.0},
    }
    with pytest.raises(ConfigError, match="simulate"):
        check_cross_rules(load_config(write_config(tmp_path, sim_cfg)), "budget")
    with pytest.raises(ConfigError, match="simulate"):
        check_cross_rules(load_config(write_config(tmp_path, uniform_cfg())), "simulate")


def test_grover_lattice_rejected(tmp_path):
    cfg = {
        "scheme": "grover",
        "k": 3,
        "omega10_mhz": 9200.0,
        "lattice": {"d_um": 1.0, "tau_us": 170.0},
        "interaction": {"c6_mhz_um6": 100.0},
    }
    with pytest.raises(ConfigError, match="uniform"):
        check_cross_rules(load_config(write_config(tmp_path, cfg)), "budget")


def test_simulate_k_cap(tmp_path, capsys):
    cfg = {"scheme": "simulate", "k": 9, "simulate": {"omega_mhz": 1.0}}
    assert main(["simulate", "--config", write_config(tmp_path, cfg)]) == 2
    assert "k <= 8" in capsys.readouterr().err


def test_schema_rejects_unknown_fields():
    with pytest.raises(ConfigError, match="scheme"):
        validate_config({"k": 1})
    with pytest.raises(ConfigError):
        validate_config({"scheme": "sequential", "k": 1, "bogus": True})


# ---------------------------------------------------------------- reports

def test_budget_report_validates_and_is_deterministic(tmp_path):
    cfg = load_config(write_config(tmp_path, uniform_cfg()))
    first = render_json(cmd_budget(cfg))
    second = render_json(cmd_budget(load_config(write_config(tmp_path, uniform_cfg()))))
    assert first == second
    report = json.loads(first)
    validate_report(report)
    assert report["schema"] == "rydgate-report/1"
    assert report["columns"] == list(BUDGET_COLUMNS["sequential"])
    for row in report["rows"]:
        assert set(row) <= set(report["columns"])


def test_csv_has_fixed_header_and_plain_decimals(tmp_path):
    cfg = load_config(write_config(tmp_path, uniform_cfg()))
    text = render_csv(cmd_budget(cfg))
    lines = text.splitlines()
    assert lines[0] == ",".join(BUDGET_COLUMNS["sequential"])
    parsed = list(csv.reader(io.StringIO(text)))
    assert len(parsed) == 1 + 2  # header + one row per k
    for row in parsed[1:]:
        for column, cell in zip(parsed[0], row):
            if column in ("scheme", "mode", "label", "opt_converged"):
                continue
            if cell:
                float(cell)  # '.' decimal, no locale formatting


def test_main_writes_output_file(tmp_path):
    cfg = uniform_cfg(output={"format": "json"})
    out = tmp_path / "report.json"
    code = main(
        ["--seedless", "budget", "--config", write_config(tmp_path, cfg), "--out", str(out)]
    )
    assert code == 0
    report = json.loads(out.read_text(encoding="utf-8"))
    validate_report(report)
    ks = [row["k"] for row in report["rows"]]
    assert ks == [2, 5]


def test_config_output_path_used_when_flag_absent(tmp_path):
    out = tmp_path / "from_config.csv"
    cfg = uniform_cfg(output={"format": "csv", "path": str(out)})
    assert main(["budget", "--config", write_config(tmp_path, cfg)]) == 0
    assert out.read_text(encoding="utf-8").startswith("scheme,")


# ------------------------------------------------------------------ sweep

def sweep_cfg():
    return {
        "scheme": "sequential",
        "k": 24,
        "omega10_mhz": 9200.0,
        "uniform": {"b_mhz": 52.0, "tau_us": 820.0, "label": "Cs 150s"},
        "sweep": {"omega_mhz": {"min": 0.4, "max": 4.0, "points": 41}},
    }


def test_sweep_minimum_close_to_numeric_minimum(tmp_path):
    report = cmd_sweep_omega(load_config(write_config(tmp_path, sweep_cfg())))
    assert report["columns"] == list(SWEEP_COLUMNS["sequential"])
    grid = [row for row in report["rows"] if row["row_type"] == "grid"]
    numeric = [row for row in report["rows"] if row["row_type"] == "numeric_opt"]
    analytic = [row for row in report["rows"] if row["row_type"] == "analytic_opt"]
    assert len(numeric) == 1 and len(analytic) == 1
    swept_best = min(row["total"] for row in grid)
    assert numeric[0]["total"] <= swept_best
    assert swept_best <= 1.10 * numeric[0]["total"]


def test_sweep_single_interior_minimum(tmp_path):
    report = cmd_sweep_omega(load_config(write_config(tmp_path, sweep_cfg())))
    totals = [row["total"] for row in report["rows"] if row["row_type"] == "grid"]
    drops = [b < a for a, b in zip(totals, totals[1:])]
    # strictly decreasing then strictly increasing: exactly one run flip
    assert drops[0] and not drops[-1]
    flips = sum(1 for a, b in zip(drops, drops[1:]) if a != b)
    assert flips == 1


# --------------------------------------------------------------- simulate

def test_simulate_ideal_cnot(tmp_path, capsys):
    cfg = {
        "scheme": "simulate",
        "k": 1,
        "simulate": {"omega_mhz": 1.0, "check_ideal": True},
        "output": {"format": "json"},
    }
    code = main(["simulate", "--config", write_config(tmp_path, cfg)])
    assert code == 0
    report = json.loads(capsys.readouterr().out)
    validate_report(report)
    by_input = {row["input_index"]: row for row in report["rows"]}
    assert by_input[2]["ideal_index"] == 3
    assert by_input[3]["ideal_index"] == 2
    assert all(row["prob_ideal"] == pytest.approx(1.0, abs=1e-12) for row in report["rows"])


def test_simulate_finite_blockade_fails_ideal_check(tmp_path, capsys):
    cfg = {
        "scheme": "simulate",
        "k": 2,
        "simulate": {"omega_mhz": 1.0, "b_mhz": 10.0, "check_ideal": True},
    }
    code = main(["simulate", "--config", write_config(tmp_path, cfg)])
    assert code == 1
    captured = capsys.readouterr()
    report = json.loads(captured.out)
    assert "tolerance" in captured.err
    assert report["rows"][0]["avg_error"] > 0.0


def test_simulate_report_without_check_exits_zero(tmp_path):
    cfg = {
        "scheme": "simulate",
        "k": 2,
        "simulate": {"omega_mhz": 1.0, "b_mhz": 10.0},
    }
    report, passed = cmd_simulate(load_config(write_config(tmp_path, cfg)))
    assert not passed
    assert report["rows"][0]["avg_error"] > 0.0


# ---------------------------------------------------------------- lattice

def test_lattice_export(tmp_path):
    cfg = {"scheme": "sequential", "k": 4, "lattice": {"d_um": 2.0}}
    report = cmd_lattice(load_config(write_config(tmp_path, cfg)))
    assert report["columns"] == list(LATTICE_COLUMNS)
    rows = report["rows"]
    assert rows[0] == {"k": 4, "index": 0, "x_um": 0.0, "y_um": 0.0, "role": "target", "r_um": 0.0}
    coords = [(row["x_um"], row["y_um"]) for row in rows[1:]]
    assert coords == [(2.0, 0.0), (0.0, 2.0), (-2.0, 0.0), (0.0, -2.0)]


# --------------------------------------------------------------- optimize

def test_optimize_command_close_to_analytic(tmp_path):
    cfg = uniform_cfg(k=[50])
    code = main(
        ["optimize", "--config", write_config(tmp_path, cfg), "--out",
         str(tmp_path / "opt.json")]
    )
    assert code == 0
    report = json.loads((tmp_path / "opt.json").read_text(encoding="utf-8"))
    row = report["rows"][0]
    assert row["omega_opt_mhz"] == pytest.approx(row["omega_opt_analytic_mhz"], rel=0.10)
    assert row["min_total"] == pytest.approx(0.0614507, rel=1e-4)
    assert row["converged"] is True
