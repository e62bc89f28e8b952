import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from sidelobe_sensing import config_from_dict
from sidelobe_sensing.deployment import Deployment
from sidelobe_sensing.sensing import make_scene

# one line per acceptance criterion, printed at the end of the run
acceptance_results: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if acceptance_results:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_results:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def acceptance_report():
    return acceptance_results


@pytest.fixture(scope="session")
def default_config():
    return config_from_dict({})


def build_ring_scene(
    cfg,
    n_interferers: int = 36,
    interferer_distance_m: float = 40.0,
    u0_distance_m: float = 20.0,
    nakagami_m: float = float("inf"),
):
    """Hand-built scene: u0 on the +x axis and one interferer per sector,
    each beamed straight at the reference BS through its own serving
    station. Deterministic (no fading, no shadowing)."""
    import dataclasses
    import math as _math

    n_sectors = cfg.sensing.n_sectors
    width = 360.0 / n_sectors
    bearings = [-k * width for k in range(n_interferers)]
    ue_xy = [[u0_distance_m, 0.0]]
    bs_xy = [[0.0, 0.0]]
    assoc = [0]
    for i, b in enumerate(bearings):
        ux = interferer_distance_m * _math.cos(_math.radians(b))
        uy = interferer_distance_m * _math.sin(_math.radians(b))
        ue_xy.append([ux, uy])
        # serving BS behind the origin on the same ray: Tx boresight hits b0
        bs_xy.append([-10.0 * _math.cos(_math.radians(b)), -10.0 * _math.sin(_math.radians(b))])
        assoc.append(i + 1)
    deployment = Deployment(
        bs_xy=np.array(bs_xy),
        ue_xy=np.array(ue_xy),
        association=np.array(assoc),
        typical_ue=0,
    )
    channel = dataclasses.replace(
        cfg.effective_channel(), nakagami_m=nakagami_m, shadow_sigma_db=0.0
    )
    rng = np.random.default_rng(0)
    return make_scene(
        deployment,
        channel,
        cfg.rx_pattern_spec(),
        cfg.tx_pattern_spec(),
        n_sectors,
        cfg.blocker.radius_m,
        rng,
    )
