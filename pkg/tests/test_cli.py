import csv
import io
import json
import math
import subprocess
import sys

import pytest

from legendre_approx import cli, functions
from legendre_approx.basis import Interval


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def csv_rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_table1_sine_csv(capsys):
    code, out, _ = run(capsys, "table1", "--function", "sine")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "function,order,taylor_snr_db,legendre_snr_db"
    # -5.5385 rounds to -5.54; the exact Legendre order-1 value is 4.066
    assert lines[1] == "sine,1,-5.54,4.07"
    rows = csv_rows(out)
    assert [r["order"] for r in rows] == ["1", "2", "3", "4", "5", "6"]
    assert rows[5]["taylor_snr_db"] == "78.31"
    assert "\r" not in out


def test_table1_exp_json(capsys):
    code, out, _ = run(capsys, "table1", "--function", "exp", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert set(payload) == {"config", "rows"}
    assert payload["config"]["interval"] == [0.0, 1.0]
    assert payload["config"]["quad_points"] == 200
    row2 = payload["rows"][1]
    assert row2["order"] == 2
    assert row2["legendre_snr_db"] == pytest.approx(29.09, abs=0.01)


def test_csv_and_json_agree(capsys):
    _, text_csv, _ = run(capsys, "table1", "--function", "all")
    _, text_json, _ = run(capsys, "table1", "--function", "all", "--format", "json")
    for c, j in zip(csv_rows(text_csv), json.loads(text_json)["rows"]):
        assert c["function"] == j["function"]
        assert float(c["taylor_snr_db"]) == round(j["taylor_snr_db"], 2)
        assert float(c["legendre_snr_db"]) == round(j["legendre_snr_db"], 2)


def test_table1_is_deterministic(capsys):
    first = run(capsys, "table1", "--function", "all", "--format", "json")[1]
    second = run(capsys, "table1", "--function", "all", "--format", "json")[1]
    assert first == second


def test_trace(capsys):
    code, out, _ = run(capsys, "trace", "--function", "all", "--grid", "11")
    assert code == 0
    rows = csv_rows(out)
    assert len(rows) == 33
    assert list(rows[0]) == (["function", "x", "f"] + [f"taylor_{k}" for k in range(1, 7)]
                             + [f"legendre_{k}" for k in range(1, 7)])
    by_fx = {(r["function"], float(r["x"])): r for r in rows}
    mid_exp = by_fx[("exp", 0.5)]
    for k in range(1, 7):
        assert float(mid_exp[f"taylor_{k}"]) == math.exp(0.5)
    assert float(by_fx[("sine", 0.0)]["f"]) == 0.0
    # 30-digit reference for the degree-0..10 even projection at p = 1/2
    midpoint_error = float(by_fx[("entropy", 0.5)]["legendre_6"]) - math.log(2)
    assert midpoint_error == pytest.approx(2.97872650732901e-4, abs=1e-8)


def test_bounds(capsys):
    code, out, _ = run(capsys, "bounds", "--function", "sine")
    assert code == 0
    rows = csv_rows(out)
    assert len(rows) == 13
    assert {r["n0"] for r in rows} == {"3"}
    for r in rows:
        if int(r["n"]) >= 3:
            assert float(r["ratio"]) <= 0.5 and r["dominated"] == "true"

    code, out, _ = run(capsys, "bounds", "--function", "exp", "--format", "json")
    assert code == 0
    for r in json.loads(out)["rows"]:
        assert r["coeff_abs"] <= r["bound_max"]
        assert r["contribution"] <= r["bound_sq"]


def test_bounds_capability_gap(capsys):
    code, out, err = run(capsys, "bounds", "--function", "entropy")
    assert code == cli.EXIT_CAPABILITY == 3
    assert out == ""
    assert "no certified" in err


def test_slope(capsys):
    code, out, _ = run(capsys, "slope", "--function", "all")
    assert code == 0
    rows = {r["function"]: r for r in csv_rows(out)}
    exp = rows["exp"]
    for col in ("kernel_slope", "regression_slope", "legendre_c1_slope"):
        assert float(exp[col]) == pytest.approx(18 - 6 * math.e, abs=1e-11)
        assert float(rows["sine"][col]) == pytest.approx(-6 / math.pi, abs=1e-11)
    assert float(exp["max_abs_diff"]) <= 1e-11


def test_slope_with_custom_polynomial():
    cfg = cli.parse_config(["slope"])
    code, text = cli.cmd_slope(cfg, specs=[functions.polynomial([0.0, 1.0], "identity")])
    assert code == 0
    row = csv_rows(text)[0]
    for col in ("kernel_slope", "regression_slope", "legendre_c1_slope"):
        assert float(row[col]) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("argv", [
    ["table1", "--interval", "1", "0"],
    ["table1", "--max-order", "0"],
    ["table1", "--quad-points", "5000"],
    ["table1", "--function", "cosine"],
    ["table1", "--taylor-point", "2"],
    ["table1", "--taylor-point", "left"],
    ["trace", "--grid", "1"],
    ["frobnicate"],
    [],
])
def test_config_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == cli.EXIT_CONFIG == 2
    assert out == ""
    assert len(err.strip().splitlines()) == 1


@pytest.mark.parametrize("argv", [
    ["table1", "--function", "entropy", "--interval", "0", "2"],
    ["table1", "--quad-points", "20"],
])
def test_computation_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == cli.EXIT_COMPUTE == 1
    assert out == ""
    assert "computation failed" in err


def test_config_defaults():
    cfg = cli.parse_config(["table1"])
    assert cfg.functions == ("sine", "exp", "entropy")
    assert cfg.interval == Interval(0, 1)
    assert (cfg.max_order, cfg.quad_points, cfg.grid) == (6, 200, 501)
    assert cfg.expansion_point == 0.5
    assert cfg.convention.value == "paper"
    assert cli.parse_config(["bounds"]).max_order == 12


def test_output_file(tmp_path, capsys):
    target = tmp_path / "t.csv"
    code, out, _ = run(capsys, "table1", "--function", "sine", "--output", str(target))
    assert code == 0 and out == ""
    assert target.read_text().startswith("function,order,")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "legendre_approx", "table1", "--function", "sine", "--max-order", "1"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1] == "sine,1,-5.54,4.07"
