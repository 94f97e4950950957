import csv
import io
import json
import math

import pytest

from sbmocz.cli import main
from sbmocz.constellation import huffman_radius, sbmocz_radius
from sbmocz.presets import PRESETS, REPORTED_GAPS, get_preset, preset_checksum
from sbmocz.report import (
    CSV_COLUMNS,
    ConfigError,
    config_from_dict,
    gap_table,
    load_curves,
    parse_config,
    results_from_json,
    results_to_csv,
    results_to_json,
)
from sbmocz.sim import SimConfig, run_sweep

CHECKSUMS = {
    "fig3a_ber": "3d90a18772aaf964b239899d5f45e0047f2a204cdf7470750c4e7531c808200c",
    "fig3b_bler": "3d90a18772aaf964b239899d5f45e0047f2a204cdf7470750c4e7531c808200c",
    "fig4a_ber": "62860b87026f73c2f24aefcaa3c9a9050e73e31b21619d4c1d3a306d5d54a16d",
    "fig4b_bler": "62860b87026f73c2f24aefcaa3c9a9050e73e31b21619d4c1d3a306d5d54a16d",
}

SMALL = {"scheme": "sbmocz_uncoded", "K": 32, "zeta": 0.05, "ebn0_grid_db": [4, 8], "max_trials": 50}


@pytest.mark.parametrize("name", sorted(CHECKSUMS))
def test_preset_checksums_frozen(name):
    assert preset_checksum(name) == CHECKSUMS[name]


def test_preset_contents():
    f3 = get_preset("fig3a_ber").expand()
    assert len(f3) == 8
    assert {c.label for c in f3} == {
        f"{s}/{ch}/{cfo}"
        for s in ("huffman_uncoded", "sbmocz_uncoded")
        for ch in ("awgn", "rayleigh_flat")
        for cfo in ("none", "uniform_full_range")
    }
    for c in f3:
        assert c.K == 128 and c.lam == 0.5 and c.N == 1024
        assert c.zeta in (0.0, 0.0117)
        assert abs(c.constellation().radius - 1.0122) <= 5e-5
    f4 = get_preset("fig4b_bler").expand()
    assert len(f4) == 6
    for c in f4:
        assert c.K == 127 and c.Q == 200 and c.zeta in (0.0, 0.0130)
    assert abs(sbmocz_radius(127, 0.5, 0.0130) - 1.0123) <= 5e-5
    assert abs(huffman_radius(127, 0.5) - 1.0123) <= 5e-5
    with pytest.raises(ValueError):
        get_preset("fig5")


def test_reported_gaps_reference_preset_curves():
    for g in REPORTED_GAPS:
        labels = {c.label for c in PRESETS[g.preset].expand()}
        assert g.curve_a in labels and g.curve_b in labels


def test_config_errors():
    with pytest.raises(ConfigError, match="K"):
        config_from_dict({"scheme": "sbmocz_uncoded", "ebn0_grid_db": [1]})
    with pytest.raises(ConfigError, match="zeta"):
        config_from_dict({**SMALL, "zeta": 7.0})
    with pytest.raises(ConfigError, match="unknown"):
        config_from_dict({**SMALL, "colour": "red"})
    with pytest.raises(ConfigError):
        parse_config()
    with pytest.raises(ConfigError):
        parse_config([1, 2])


def test_defaults_applied_and_echoed():
    c = parse_config(SMALL)[0]
    d = c.to_dict()
    assert d["N"] == 1024 and d["Q"] == 200 and d["lam"] == 0.5
    assert parse_config(d)[0] == c
    assert parse_config({"configs": [d, d]}) == [c, c]


def test_config_file_round_trip(tmp_path):
    p = tmp_path / "run.json"
    p.write_text(json.dumps(SMALL))
    c = parse_config(p, overrides={"master_seed": 5})[0]
    assert c.master_seed == 5
    p2 = tmp_path / "echo.json"
    p2.write_text(json.dumps(c.to_dict()))
    assert parse_config(p2)[0] == c
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    with pytest.raises(ConfigError):
        parse_config(bad)
    with pytest.raises(ConfigError):
        parse_config(tmp_path / "missing.json")


def test_csv_empty_and_round_trip():
    assert results_to_csv([]) == ",".join(CSV_COLUMNS) + "\n"
    r = run_sweep(config_from_dict({**SMALL, "ebn0_grid_db": [6]}))
    rows = list(csv.DictReader(io.StringIO(results_to_csv([r]))))
    assert len(rows) == 1
    p = r.points[0]
    assert int(rows[0]["trials"]) == p.trials
    assert float(rows[0]["ber"]) == p.ber
    assert rows[0]["scheme"] == "sbmocz_uncoded"


def test_json_round_trip(tmp_path):
    r = run_sweep(config_from_dict(SMALL))
    path = tmp_path / "out.json"
    path.write_text(results_to_json([r], wall_time=1.0))
    doc = json.loads(path.read_text())
    assert "stopping_rule" in doc and doc["sweeps"][0]["seed"] == 0
    back = results_from_json(path)[0]
    assert back.config == r.config
    for a, b in zip(back.points, r.points):
        assert (a.trials, a.bit_errors, a.ber) == (b.trials, b.bit_errors, b.ber)
        assert math.isnan(a.cfo_rmse) and math.isnan(b.cfo_rmse)


def test_gap_table_identical_curve():
    r = run_sweep(config_from_dict({**SMALL, "ebn0_grid_db": [0, 4, 8, 12], "max_trials": 400}))
    curves = {"huffman_uncoded/awgn/none": r, "sbmocz_uncoded/awgn/none": r}
    rows = [row for row in gap_table(curves, "fig3a_ber") if row["measured"] is not None]
    assert rows and all(row["measured"] == 0.0 for row in rows)


def test_cli_run_and_gaps(tmp_path, capsys):
    cfgp = tmp_path / "c.json"
    cfgp.write_text(json.dumps([SMALL, {**SMALL, "cfo": "uniform_full_range"}]))
    out = tmp_path / "res"
    assert main(["run", "--config", str(cfgp), "--out-dir", str(out), "--seed", "3", "--quiet"]) == 0
    curves = load_curves(out / "c.csv")
    assert set(curves) == {"sbmocz_uncoded/awgn/none", "sbmocz_uncoded/awgn/uniform_full_range"}
    assert main(["run", "--config", str(cfgp), "--out-dir", str(out), "--format", "json", "--quiet"]) == 0
    assert json.loads((out / "c.json").read_text())["sweeps"][0]["seed"] == 0
    assert main(["gaps", str(out / "c.csv"), "--preset", "fig3a_ber"]) == 0
    assert "missing curve" in capsys.readouterr().out


def test_cli_determinism_across_workers(tmp_path):
    cfgp = tmp_path / "c.json"
    cfgp.write_text(json.dumps({**SMALL, "channel": "rayleigh_flat", "cfo": "uniform_full_range"}))
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["run", "--config", str(cfgp), "--out-dir", str(a), "--quiet"]) == 0
    assert main(["run", "--config", str(cfgp), "--out-dir", str(b), "--workers", "3", "--quiet"]) == 0
    assert (a / "c.csv").read_bytes() == (b / "c.csv").read_bytes()


def test_cli_exit_codes(tmp_path, capsys):
    cfgp = tmp_path / "c.json"
    cfgp.write_text(json.dumps({"scheme": "sbmocz_uncoded", "ebn0_grid_db": [1]}))
    assert main(["run", "--config", str(cfgp), "--out-dir", str(tmp_path)]) == 1
    assert "K" in capsys.readouterr().err
    cfgp.write_text(json.dumps({**SMALL, "zeta": 7.0}))
    assert main(["run", "--config", str(cfgp), "--out-dir", str(tmp_path)]) == 1
    assert main(["gaps", str(tmp_path / "nope.csv")]) == 2
    blocker = tmp_path / "file"
    blocker.write_text("x")
    cfgp.write_text(json.dumps(SMALL))
    assert main(["run", "--config", str(cfgp), "--out-dir", str(blocker / "sub"), "--quiet"]) == 2
    with pytest.raises(SystemExit):
        main(["run"])


def test_sim_config_from_preset_override():
    cs = parse_config(preset="fig4a_ber", overrides={"max_trials": 10, "master_seed": 2})
    assert all(c.max_trials == 10 and c.master_seed == 2 for c in cs)
    assert isinstance(cs[0], SimConfig)
