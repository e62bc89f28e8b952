import csv
import json
import math

import pytest

from sidelobe_sensing.cli import main
from sidelobe_sensing.config import (
    ConfigError,
    config_from_dict,
    load_config,
    save_config,
)
from sidelobe_sensing.evaluation import circular_error_deg

DEMO_FILES = [
    "deployment.csv",
    "sensing_matrix.csv",
    "signature.csv",
    "trajectory_true.csv",
    "trajectory_estimated.csv",
    "deployment.svg",
    "sensing_matrix.svg",
    "signature.svg",
    "trajectory.svg",
]


def test_empty_config_is_full_defaults():
    cfg = config_from_dict({})
    assert cfg.network.radius_m == 100.0
    assert cfg.network.bs_density == 6e-4
    assert cfg.network.ue_density == 1.5e-3
    assert cfg.channel.tx_power_dbm == 19.6
    assert cfg.channel.bandwidth_hz == 400e6
    assert cfg.channel.nakagami_m == 3.0
    assert cfg.antenna_rx.beamwidth_deg == 10.0
    assert cfg.antenna_tx.beamwidth_deg == 135.0
    assert cfg.sensing.window_epochs == 50
    assert cfg.sensing.n_sectors == 36
    assert cfg.bands.l0 == 1 and cfg.bands.l1 == 17
    assert cfg.blocker.radius_m == 1.0


def test_invalid_bandwidth_names_key():
    with pytest.raises(ConfigError, match="channel.bandwidth_hz"):
        config_from_dict({"channel": {"bandwidth_hz": -1.0}})


def test_unknown_key_rejected():
    with pytest.raises(ConfigError, match="channel.carrier"):
        config_from_dict({"channel": {"carrier": 28e9}})
    with pytest.raises(ConfigError, match="mystery"):
        config_from_dict({"mystery": {}})


def test_blocker_radius_override_rescales_spread():
    cfg = config_from_dict({"blocker": {"radius_m": 2.0}})
    assert cfg.effective_channel().blockage_sigma_deg == pytest.approx(math.sqrt(8.0) * 2.0)


def test_config_roundtrip(tmp_path):
    cfg = config_from_dict(
        {"seed": 99, "blocker": {"radius_m": 0.5}, "eval": {"n_trials": 7}}
    )
    path = tmp_path / "cfg.json"
    save_config(cfg, path)
    assert load_config(path) == cfg


def test_load_config_rejects_bad_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{nope")
    with pytest.raises(ConfigError):
        load_config(path)


@pytest.fixture(scope="module")
def demo_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("demo")
    assert main(["demo", "--out", str(out), "--seed", "27"]) == 0
    return out


def test_demo_emits_all_artifacts(demo_dir):
    for name in DEMO_FILES:
        assert (demo_dir / name).exists(), name


def test_demo_sensing_matrix_dimensions(demo_dir):
    with open(demo_dir / "sensing_matrix.csv") as fh:
        rows = list(csv.reader(fh))
    assert len(rows) == 1 + 51 * 36


def test_demo_rerun_bit_identical(demo_dir, tmp_path):
    again = tmp_path / "again"
    assert main(["demo", "--out", str(again), "--seed", "27"]) == 0
    for name in DEMO_FILES:
        assert (again / name).read_bytes() == (demo_dir / name).read_bytes(), name


def test_demo_prints_seed(tmp_path, capsys):
    main(["demo", "--out", str(tmp_path / "d")])
    out = capsys.readouterr().out
    assert "seed: 27" in out  # the default config seed


def test_demo_staircase_near_reference(demo_dir):
    # detected bearings stay within half a sector of truth while the
    # blocker is near the sensing BS
    truth = {}
    with open(demo_dir / "trajectory_true.csv") as fh:
        for row in csv.DictReader(fh):
            truth[int(row["epoch"])] = (float(row["d_m"]), float(row["bearing_deg"]))
    checked = 0
    with open(demo_dir / "trajectory_estimated.csv") as fh:
        for row in csv.DictReader(fh):
            if not row["bearing_deg"]:
                continue
            d, bearing = truth[int(row["epoch"])]
            if d <= 25.0:
                checked += 1
                assert circular_error_deg(bearing, float(row["bearing_deg"])) <= 5.0 + 1e-9
    assert checked >= 5


def test_grid_command(tmp_path):
    out = tmp_path / "grid"
    config = tmp_path / "cfg.json"
    config.write_text(json.dumps({"eval": {"grid_max_radius_m": 10.0}}))
    assert main(["grid", "--config", str(config), "--out", str(out), "--seed", "1", "--trials", "2"]) == 0
    assert (out / "cells.csv").exists()
    assert (out / "wmae.csv").exists()
    assert (out / "cells.svg").exists()
    with open(out / "cells.csv") as fh:
        rows = list(csv.reader(fh))
    assert len(rows) == 1 + 2 * 36  # 2 rings


def test_sweep_psl_command(tmp_path):
    out = tmp_path / "psl"
    config = tmp_path / "cfg.json"
    config.write_text(
        json.dumps(
            {
                "eval": {
                    "grid_max_radius_m": 10.0,
                    "psl_sweep_db": [20.28, 40.28],
                    "mu_values": [0.0, 0.01],
                }
            }
        )
    )
    assert main(["sweep-psl", "--config", str(config), "--out", str(out), "--seed", "2", "--trials", "1"]) == 0
    with open(out / "sweep_psl.csv") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["axis_value", "mu", "wmae_deg", "ci95_deg", "detection_rate"]
    assert len(rows) == 1 + 2 * 2  # one row per (psl value, mu)
    assert (out / "cells_psl_20p28db.svg").exists()
    assert (out / "cells_psl_40p28db.svg").exists()


def test_sweep_bw_size_command(tmp_path):
    out = tmp_path / "bwsize"
    config = tmp_path / "cfg.json"
    config.write_text(
        json.dumps(
            {
                "eval": {
                    "grid_max_radius_m": 10.0,
                    "beamwidth_sweep_deg": [10.0, 30.0],
                    "blocker_radius_sweep_m": [1.0, 2.0],
                    "mu_values": [0.0],
                }
            }
        )
    )
    assert main(["sweep-bw-size", "--config", str(config), "--out", str(out), "--seed", "3", "--trials", "1"]) == 0
    assert (out / "sweep_beamwidth.csv").exists()
    assert (out / "sweep_blocker_radius.csv").exists()
    assert (out / "cells_beamwidth_10deg.svg").exists()
    assert (out / "cells_beamwidth_30deg.svg").exists()
    assert (out / "cells_blocker_radius_1m.svg").exists()
    assert (out / "cells_blocker_radius_2m.svg").exists()
