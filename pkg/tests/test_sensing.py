import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import sidelobe_sensing as sls
from conftest import build_ring_scene
from sidelobe_sensing.mobility import BlockerState
from sidelobe_sensing.sensing import (
    EpochDraw,
    SectorPartition,
    build_sensing_matrix,
    epoch_sinr_db,
    interferer_powers_mw,
    interferer_presence_prob,
    make_scene,
    reference_power_mw,
    sector_interference_mw,
    sector_of,
    sector_sinr,
    simulate_history,
    write_sensing_matrix_csv,
)


def default_partition(orientation=0.0):
    return SectorPartition(n_sectors=36, reference_orientation_deg=orientation)


def test_sector_of_reference_boresight_is_zero():
    part = default_partition(orientation=42.0)
    assert sector_of(part, 42.0) == 0


def test_sector_of_clockwise_ordering():
    part = default_partition()
    assert sector_of(part, -10.0) == 1


def test_sector_boundary_half_open():
    part = default_partition()
    # upper edge of sector 0 belongs to the neighbor on the increasing side
    assert sector_of(part, 5.0) == 35
    assert sector_of(part, 4.999) == 0
    assert sector_of(part, -5.0) == 1 or sector_of(part, -5.0) == 0
    # the lower edge is included in sector 0 per the half-open convention
    assert sector_of(part, -5.0 + 1e-9) == 0


@given(bearing=st.floats(-1000, 1000), orientation=st.floats(-180, 180))
@settings(max_examples=300)
def test_partition_totality(bearing, orientation):
    part = default_partition(orientation)
    k = sector_of(part, bearing)
    assert 0 <= k < 36
    # the bearing lies inside [phi_k - alpha, phi_k + alpha)
    phi_k = part.orientations_deg()[k]
    offset = float(sls.wrap_deg(bearing - phi_k))
    assert -5.0 - 1e-9 <= offset < 5.0 + 1e-9


def test_presence_prob_examples():
    assert interferer_presence_prob(0.0, math.radians(5.0), 100.0) == 0.0
    p = interferer_presence_prob(1.5e-3, math.radians(5.0), 100.0)
    assert p == pytest.approx(0.730, abs=1e-3)
    p_single = interferer_presence_prob(1.5e-3, math.radians(180.0), 100.0)
    assert p_single == pytest.approx(1.0, abs=1e-9)


def test_presence_prob_empirical_match(default_config):
    # fraction of PPP draws with at least one UE in a fixed 10 deg sector
    rng = np.random.default_rng(123)
    part = default_partition(orientation=37.0)
    hits = 0
    n_draws = 10_000
    for _ in range(n_draws):
        pts = sls.sample_ppp(1.5e-3, 100.0, rng)
        if len(pts):
            bearings = np.degrees(np.arctan2(pts[:, 1], pts[:, 0]))
            if np.any(sector_of(part, bearings) == 0):
                hits += 1
    expected = interferer_presence_prob(1.5e-3, math.radians(5.0), 100.0)
    assert hits / n_draws == pytest.approx(expected, abs=0.02)


def test_empty_sector_interference_is_zero(default_config):
    scene = build_ring_scene(default_config, n_interferers=1)
    draw = EpochDraw(fading_interferers=np.ones(1))
    # interferer sits in sector 0; any other sector is empty
    assert sector_interference_mw(scene, draw, 7) == 0.0


def test_single_interferer_power_hand_computed(default_config):
    # one interferer at 40 m on the boresight ray, beamed straight at the
    # reference BS: every factor of the link budget is known in closed form
    scene = build_ring_scene(default_config, n_interferers=1, interferer_distance_m=40.0)
    draw = EpochDraw(fading_interferers=np.ones(1))
    got = sector_interference_mw(scene, draw, 0)

    g0 = math.pi / (21.32 * math.radians(10.0) + math.pi)
    g0_tx = math.pi / (21.32 * math.radians(135.0) + math.pi)
    tx_gain = 2.0 * g0_tx * 10.0**2.028  # on its own boresight
    rx_gain = g0 * 10.0**2.028  # arrives on the reference boresight
    pl_db = 60.1 + 14.0 * math.log10(40.0)
    expected = 10.0 ** (19.6 / 10.0) * tx_gain * rx_gain * 10.0 ** (-pl_db / 10.0)
    assert got == pytest.approx(expected, rel=1e-9)


def test_blocked_interferer_drops_ten_orders(default_config):
    scene = build_ring_scene(default_config, n_interferers=1, interferer_distance_m=40.0)
    clear = sector_interference_mw(scene, EpochDraw(fading_interferers=np.ones(1)), 0)
    blocker = BlockerState(distance_m=30.0, bearing_deg=0.0, radius_m=1.0)
    blocked = sector_interference_mw(
        scene, EpochDraw(fading_interferers=np.ones(1), blocker=blocker), 0
    )
    assert blocked / clear == pytest.approx(1e-10, rel=1e-6)


def test_sector_sum_equals_total_interference(default_config):
    cfg = default_config
    rng = np.random.default_rng(5)
    dep = sls.build_deployment(cfg.network, rng)
    scene = make_scene(
        dep, cfg.effective_channel(), cfg.rx_pattern_spec(), cfg.tx_pattern_spec(),
        36, 1.0, rng,
    )
    draw = EpochDraw(
        fading_interferers=rng.gamma(3.0, 1.0 / 3.0, scene.n_interferers),
        blocker=BlockerState(distance_m=20.0, bearing_deg=33.0, radius_m=1.0),
    )
    total = interferer_powers_mw(scene, draw).sum()
    by_sector = sum(sector_interference_mw(scene, draw, k) for k in range(36))
    assert by_sector == pytest.approx(total, rel=1e-9)


def test_blocker_never_increases_sector_power(default_config):
    cfg = default_config
    rng = np.random.default_rng(8)
    dep = sls.build_deployment(cfg.network, rng)
    scene = make_scene(
        dep, cfg.effective_channel(), cfg.rx_pattern_spec(), cfg.tx_pattern_spec(),
        36, 1.0, rng,
    )
    fading = rng.gamma(3.0, 1.0 / 3.0, scene.n_interferers)
    free = EpochDraw(fading_interferers=fading)
    for bearing in (-120.0, 0.0, 77.0):
        blocked = EpochDraw(
            fading_interferers=fading,
            blocker=BlockerState(distance_m=15.0, bearing_deg=bearing, radius_m=1.0),
        )
        for k in range(36):
            assert sector_interference_mw(scene, blocked, k) <= sector_interference_mw(
                scene, free, k
            )


def test_empty_sector_sinr_is_noise_limited(default_config):
    scene = build_ring_scene(default_config, n_interferers=1)
    draw = EpochDraw(fading_interferers=np.ones(1))
    snr = sector_sinr(scene, draw, 7)
    assert snr == pytest.approx(reference_power_mw(scene, draw) / scene.noise_mw, rel=1e-12)
    assert scene.channel.noise_power_dbm() == pytest.approx(-87.98, abs=0.01)


def test_reference_occlusion_hits_all_sectors_equally(default_config):
    # no interferers: a blocker square on the link costs every sector 100 dB
    scene = build_ring_scene(default_config, n_interferers=0, u0_distance_m=20.0)
    free = epoch_sinr_db(scene, EpochDraw())
    blocker = BlockerState(distance_m=10.0, bearing_deg=0.0, radius_m=1.0)
    hit = epoch_sinr_db(scene, EpochDraw(blocker=blocker))
    np.testing.assert_allclose(free - hit, 100.0, rtol=1e-9)


def test_blocking_sole_interferer_raises_only_that_sector(default_config):
    scene = build_ring_scene(default_config, n_interferers=36, interferer_distance_m=40.0)
    ones = np.ones(36)
    free = epoch_sinr_db(scene, EpochDraw(fading_interferers=ones))
    # block the interferer in sector 5 from farther than the typical UE
    bearing = float(scene.partition.orientations_deg()[5])
    blocker = BlockerState(distance_m=30.0, bearing_deg=bearing, radius_m=1.0)
    hit = epoch_sinr_db(scene, EpochDraw(fading_interferers=ones, blocker=blocker))
    assert hit[5] > free[5] + 10.0
    mask = np.ones(36, bool)
    mask[5] = False
    # neighbors only feel the far Gaussian tail of the notch (<1e-3 dB)
    np.testing.assert_allclose(hit[mask], free[mask], atol=1e-3)


def test_shared_numerator_ratio(default_config):
    scene = build_ring_scene(default_config, n_interferers=36)
    draw = EpochDraw(fading_interferers=np.linspace(0.5, 2.0, 36))
    g3 = sector_sinr(scene, draw, 3)
    g9 = sector_sinr(scene, draw, 9)
    i3 = sector_interference_mw(scene, draw, 3) + scene.noise_mw
    i9 = sector_interference_mw(scene, draw, 9) + scene.noise_mw
    assert g3 / g9 == pytest.approx(i9 / i3, rel=1e-12)


def test_history_and_matrix_shapes(default_config):
    scene = build_ring_scene(default_config, n_interferers=4)
    traj = [None] * 60
    hist = simulate_history(scene, traj, np.random.default_rng(0))
    mat = build_sensing_matrix(hist, t=50, tau=50)
    assert mat.values_db.shape == (51, 36)
    assert mat.epoch_of_row[0] == 50 and mat.epoch_of_row[-1] == 0
    single = build_sensing_matrix(hist, t=10, tau=0)
    assert single.values_db.shape == (1, 36)


def test_matrix_rejects_insufficient_history(default_config):
    scene = build_ring_scene(default_config, n_interferers=2)
    hist = simulate_history(scene, [None] * 20, np.random.default_rng(0))
    with pytest.raises(ValueError):
        build_sensing_matrix(hist, t=10, tau=50)
    with pytest.raises(ValueError):
        build_sensing_matrix(hist, t=25, tau=0)


def test_static_scene_rows_identical(default_config):
    # no fading, no blocker: every epoch sees the same sector SINRs
    scene = build_ring_scene(default_config, n_interferers=8, nakagami_m=math.inf)
    hist = simulate_history(scene, [None] * 55, np.random.default_rng(0))
    mat = build_sensing_matrix(hist, t=52, tau=50)
    np.testing.assert_array_equal(mat.values_db, np.tile(mat.values_db[0], (51, 1)))


def test_history_deterministic(default_config):
    cfg = default_config
    dep = sls.build_deployment(cfg.network, np.random.default_rng(4))
    traj = [BlockerState(distance_m=10.0 + t, bearing_deg=3.0 * t, radius_m=1.0) for t in range(55)]
    runs = []
    for _ in range(2):
        rng = np.random.default_rng(4)
        dep_i = sls.build_deployment(cfg.network, rng)
        scene = make_scene(
            dep_i, cfg.effective_channel(), cfg.rx_pattern_spec(), cfg.tx_pattern_spec(),
            36, 1.0, rng,
        )
        runs.append(simulate_history(scene, traj, rng).gamma_db)
    np.testing.assert_array_equal(runs[0], runs[1])


def test_matrix_csv_layout(tmp_path, default_config):
    scene = build_ring_scene(default_config, n_interferers=3)
    hist = simulate_history(scene, [None] * 51, np.random.default_rng(1))
    mat = build_sensing_matrix(hist, t=50, tau=50)
    path = tmp_path / "matrix.csv"
    write_sensing_matrix_csv(mat, path)
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "epoch,sector_index,sector_orientation_deg,gamma_db"
    assert len(lines) == 1 + 51 * 36
