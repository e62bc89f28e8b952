"""Sector-domain interference sensing at the reference BS.

The azimuth plane is split into equal sectors anchored on the reference
uplink. Every epoch, the interference landing in each sector is summed and
turned into a per-sector SINR; stacking a sliding window of those rows
(newest first) yields the sensing matrix that downstream source separation
operates on.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .angles import bearing_deg, circular_diff_deg, wrap_deg
from .deployment import Deployment
from .mobility import BlockerState
from .radio import (
    AntennaPattern,
    ChannelParams,
    antenna_gain,
    blockage_applies,
    blockage_db,
    pathloss_db,
)


@dataclass(frozen=True)
class SectorPartition:
    """Equal, contiguous sectors covering the circle.

    Sector 0 is centered on `reference_orientation_deg` (the uplink
    boresight); orientations step clockwise: phi_k = phi_0 - k * width.
    """

    n_sectors: int
    reference_orientation_deg: float = 0.0

    def __post_init__(self):
        if self.n_sectors < 1:
            raise ValueError("n_sectors must be >= 1")

    @property
    def width_deg(self) -> float:
        return 360.0 / self.n_sectors

    @property
    def half_width_deg(self) -> float:
        return 180.0 / self.n_sectors

    def orientations_deg(self) -> np.ndarray:
        k = np.arange(self.n_sectors)
        return wrap_deg(self.reference_orientation_deg - k * self.width_deg)


def sector_of(partition: SectorPartition, bearing: float | np.ndarray):
    """Sector index containing an absolute bearing.

    Each sector covers [phi_k - alpha, phi_k + alpha), half-open toward
    increasing angle, so every bearing maps to exactly one sector.
    """
    alpha = partition.half_width_deg
    x = (partition.reference_orientation_deg - np.asarray(bearing, dtype=float)) % 360.0
    k = np.ceil((x - alpha) / (2.0 * alpha)).astype(int) % partition.n_sectors
    return int(k) if k.ndim == 0 else k


def interferer_presence_prob(ue_density: float, half_width_rad: float, radius_m: float) -> float:
    """Probability that a sector of the given half-width contains at least
    one PPP point within `radius_m`."""
    if ue_density < 0.0 or half_width_rad < 0.0 or radius_m < 0.0:
        raise ValueError("inputs must be non-negative")
    return 1.0 - math.exp(-ue_density * half_width_rad * radius_m**2)


@dataclass
class Scene:
    """A deployment frozen for one trial: geometry, static link budgets and
    per-trial shadowing, ready for fast per-epoch evaluation.

    Interferer arrays are aligned and hold only UEs other than the typical
    one; `base_power_mw` already folds in transmit power, both antenna
    gains, pathloss and static shadow (fading and blockage are per-epoch).
    """

    deployment: Deployment
    channel: ChannelParams
    rx_pattern: AntennaPattern
    tx_pattern: AntennaPattern
    partition: SectorPartition
    blocker_radius_m: float
    ref_distance_m: float
    ref_base_power_mw: float
    interferer_ue: np.ndarray  # UE indices
    interferer_bearing_deg: np.ndarray  # absolute, seen from the reference BS
    interferer_distance_m: np.ndarray
    interferer_sector: np.ndarray
    interferer_base_power_mw: np.ndarray
    noise_mw: float

    @property
    def n_interferers(self) -> int:
        return self.interferer_ue.size


def make_scene(
    deployment: Deployment,
    channel: ChannelParams,
    rx_pattern_spec: tuple[float, float, float],
    tx_pattern_spec: tuple[float, float, float],
    n_sectors: int,
    blocker_radius_m: float,
    rng: np.random.Generator,
) -> Scene:
    """Assemble the per-trial scene around the typical uplink.

    Pattern specs are (beamwidth_deg, main_gain, side_gain). The reference
    Rx boresight points at the typical UE; every UE's Tx boresight points
    at its serving BS. Static shadows are drawn here, one per UE (the
    typical UE's shadow applies to the reference link).
    """
    origin = deployment.bs_xy[deployment.typical_bs]
    u0 = deployment.typical_ue
    boresight = bearing_deg(origin, deployment.ue_xy[u0])
    rx_pattern = AntennaPattern(*rx_pattern_spec, boresight_deg=boresight)
    tx_pattern = AntennaPattern(*tx_pattern_spec)
    partition = SectorPartition(n_sectors=n_sectors, reference_orientation_deg=boresight)

    shadows = rng.normal(0.0, channel.shadow_sigma_db, size=deployment.n_ue)

    d0 = float(np.hypot(*(deployment.ue_xy[u0] - origin)))
    ref_base_db = (
        channel.tx_power_dbm
        + 10.0 * math.log10(tx_pattern.main_gain)
        + 10.0 * math.log10(rx_pattern.main_gain)
        - pathloss_db(channel, d0)
        + shadows[u0]
    )

    idx = np.array([i for i in range(deployment.n_ue) if i != u0], dtype=int)
    bearings = np.zeros(idx.size)
    distances = np.zeros(idx.size)
    base_mw = np.zeros(idx.size)
    for row, i in enumerate(idx):
        ue = deployment.ue_xy[i]
        serving = deployment.bs_xy[deployment.association[i]]
        bearings[row] = bearing_deg(origin, ue)
        distances[row] = float(np.hypot(*(ue - origin)))
        ue_boresight = bearing_deg(ue, serving)
        aod = wrap_deg(bearing_deg(ue, origin) - ue_boresight)
        aoa = wrap_deg(bearings[row] - boresight)
        g = antenna_gain(tx_pattern, float(aod)) * antenna_gain(rx_pattern, float(aoa))
        base_mw[row] = g * 10.0 ** (
            (channel.tx_power_dbm - pathloss_db(channel, distances[row]) + shadows[i]) / 10.0
        )

    return Scene(
        deployment=deployment,
        channel=channel,
        rx_pattern=rx_pattern,
        tx_pattern=tx_pattern,
        partition=partition,
        blocker_radius_m=blocker_radius_m,
        ref_distance_m=d0,
        ref_base_power_mw=10.0 ** (ref_base_db / 10.0),
        interferer_ue=idx,
        interferer_bearing_deg=bearings,
        interferer_distance_m=distances,
        interferer_sector=sector_of(partition, bearings) if idx.size else np.zeros(0, dtype=int),
        interferer_base_power_mw=base_mw,
        noise_mw=channel.noise_power_mw(),
    )


@dataclass(frozen=True)
class EpochDraw:
    """Random state of one epoch: fading powers plus the blocker position."""

    fading_ref: float = 1.0
    fading_interferers: np.ndarray | None = None  # aligned with scene interferers
    blocker: BlockerState | None = None


def _blockage_factors(scene: Scene, blocker: BlockerState | None) -> tuple[np.ndarray, float]:
    """Linear blockage multipliers (per interferer, reference link)."""
    n = scene.n_interferers
    if blocker is None:
        return np.ones(n), 1.0
    sep = circular_diff_deg(scene.interferer_bearing_deg, blocker.bearing_deg)
    notch_db = blockage_db(sep, scene.channel)
    gated = blocker.distance_m <= scene.interferer_distance_m + blocker.radius_m
    factors = np.where(gated, 10.0 ** (np.asarray(notch_db) / 10.0), 1.0)
    ref_factor = 1.0
    if blockage_applies(blocker.distance_m, scene.ref_distance_m, blocker.radius_m):
        sep0 = circular_diff_deg(blocker.bearing_deg, scene.rx_pattern.boresight_deg)
        ref_factor = 10.0 ** (float(blockage_db(sep0, scene.channel)) / 10.0)
    return (factors if n else np.ones(0)), ref_factor


def interferer_powers_mw(scene: Scene, draw: EpochDraw) -> np.ndarray:
    """Per-interferer received power (mW) for one epoch."""
    fading = draw.fading_interferers
    if fading is None:
        fading = np.ones(scene.n_interferers)
    factors, _ = _blockage_factors(scene, draw.blocker)
    return scene.interferer_base_power_mw * fading * factors


def sector_interference_mw(scene: Scene, draw: EpochDraw, sector_k: int) -> float:
    """Sum interference (mW) landing in one sector this epoch."""
    powers = interferer_powers_mw(scene, draw)
    return float(powers[scene.interferer_sector == sector_k].sum())


def reference_power_mw(scene: Scene, draw: EpochDraw) -> float:
    """Received power of the typical uplink this epoch (mW)."""
    _, ref_factor = _blockage_factors(scene, draw.blocker)
    return scene.ref_base_power_mw * draw.fading_ref * ref_factor


def sector_sinr(scene: Scene, draw: EpochDraw, sector_k: int) -> float:
    """Linear SINR of the reference uplink against one sector's
    interference plus noise; the numerator is shared by all sectors."""
    return reference_power_mw(scene, draw) / (
        sector_interference_mw(scene, draw, sector_k) + scene.noise_mw
    )


def epoch_sinr_db(scene: Scene, draw: EpochDraw) -> np.ndarray:
    """All sector SINRs of one epoch, in dB."""
    powers = interferer_powers_mw(scene, draw)
    per_sector = np.zeros(scene.partition.n_sectors)
    np.add.at(per_sector, scene.interferer_sector, powers)
    num = reference_power_mw(scene, draw)
    return 10.0 * np.log10(num / (per_sector + scene.noise_mw))


@dataclass
class SinrHistory:
    """Per-epoch sector SINR rows (dB), oldest first."""

    gamma_db: np.ndarray  # (T, n_sectors)
    partition: SectorPartition

    @property
    def n_epochs(self) -> int:
        return self.gamma_db.shape[0]


def simulate_history(
    scene: Scene,
    trajectory,
    rng: np.random.Generator,
) -> SinrHistory:
    """Roll the scene over a blocker trajectory, redrawing fading each epoch.

    `trajectory` is a sequence of BlockerState or None (absent). Fading for
    all UEs is drawn up front in one block so the stream consumption is
    independent of the blocker path.
    """
    t_total = len(trajectory)
    n_ue = scene.deployment.n_ue
    m = scene.channel.nakagami_m
    if math.isinf(m):
        fading = np.ones((t_total, n_ue))
    else:
        fading = rng.gamma(shape=m, scale=1.0 / m, size=(t_total, n_ue))

    u0 = scene.deployment.typical_ue
    gamma = np.zeros((t_total, scene.partition.n_sectors))
    for t, blocker in enumerate(trajectory):
        draw = EpochDraw(
            fading_ref=float(fading[t, u0]),
            fading_interferers=fading[t, scene.interferer_ue] if scene.n_interferers else None,
            blocker=blocker,
        )
        gamma[t] = epoch_sinr_db(scene, draw)
    return SinrHistory(gamma_db=gamma, partition=scene.partition)


@dataclass
class SensingMatrix:
    """Sliding-window stack of sector SINR rows, newest first.

    values[r, k] is the SINR (dB) of sector k at epoch t - r, where t is
    the newest epoch in the window.
    """

    values_db: np.ndarray  # (tau + 1, n_sectors)
    newest_epoch: int
    partition: SectorPartition

    @property
    def window_epochs(self) -> int:
        return self.values_db.shape[0] - 1

    @property
    def epoch_of_row(self) -> np.ndarray:
        return self.newest_epoch - np.arange(self.values_db.shape[0])

    def values_linear(self) -> np.ndarray:
        return 10.0 ** (self.values_db / 10.0)


def build_sensing_matrix(history: SinrHistory, t: int, tau: int) -> SensingMatrix:
    """Window rows t, t-1, ..., t-tau out of the history."""
    if tau < 0:
        raise ValueError("tau must be >= 0")
    if t - tau < 0 or t >= history.n_epochs:
        raise ValueError(
            f"window [{t - tau}, {t}] outside simulated history of {history.n_epochs} epochs"
        )
    rows = history.gamma_db[t - tau : t + 1][::-1].copy()
    return SensingMatrix(values_db=rows, newest_epoch=t, partition=history.partition)


def write_sensing_matrix_csv(matrix: SensingMatrix, path) -> None:
    """Dump (epoch, sector_index, sector_orientation_deg, gamma_db)."""
    orientations = matrix.partition.orientations_deg()
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["epoch", "sector_index", "sector_orientation_deg", "gamma_db"])
        for r, epoch in enumerate(matrix.epoch_of_row):
            for k in range(matrix.partition.n_sectors):
                writer.writerow(
                    [int(epoch), k, f"{orientations[k]:.10g}", f"{matrix.values_db[r, k]:.10g}"]
                )
