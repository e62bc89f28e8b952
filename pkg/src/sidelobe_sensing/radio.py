"""Link-level physics: sectored Gaussian antennas, pathloss, fading and
angular blockage shadowing.

Everything here is a pure function of its inputs except the fading draw,
which consumes the random stream handed to it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .angles import wrap_deg

# Main-lobe rolloff constant of the sectored Gaussian pattern: the gain at
# the sector edge is main_gain * 10**(-GAUSSIAN_ROLLOFF/4).
GAUSSIAN_ROLLOFF = 2.028

# Sector-model reference gain, a function of beamwidth (radians inside).
def reference_gain(beamwidth_deg: float) -> float:
    """Baseline gain level for a given beamwidth: pi / (21.32*z + pi)."""
    z = math.radians(beamwidth_deg)
    return math.pi / (21.32 * z + math.pi)


@dataclass(frozen=True)
class AntennaPattern:
    """Sectored Gaussian directional pattern.

    Inside the main lobe (|offset| <= beamwidth/2) the gain follows a
    Gaussian rolloff from `main_gain`; outside it is flat at `side_gain`.
    `boresight_deg` is the absolute orientation of the main lobe.
    """

    beamwidth_deg: float
    main_gain: float
    side_gain: float
    boresight_deg: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.beamwidth_deg < 360.0:
            raise ValueError(f"beamwidth_deg: must be in (0, 360), got {self.beamwidth_deg}")
        if self.main_gain <= 0.0:
            raise ValueError("main_gain: must be > 0")
        if self.side_gain < 0.0:
            raise ValueError("side_gain: must be >= 0")
        if self.main_gain < self.side_gain:
            raise ValueError("main_gain: must be >= side_gain")


def rx_pattern_defaults(beamwidth_deg: float) -> tuple[float, float]:
    """(main_gain, side_gain) for a receive pattern of the given beamwidth."""
    g0 = reference_gain(beamwidth_deg)
    return g0 * 10.0 ** GAUSSIAN_ROLLOFF, g0


def tx_pattern_defaults(beamwidth_deg: float) -> tuple[float, float]:
    """(main_gain, side_gain) for a transmit pattern; side lobes are dead."""
    g0 = reference_gain(beamwidth_deg)
    return 2.0 * g0 * 10.0 ** GAUSSIAN_ROLLOFF, 0.0


def antenna_gain(pattern: AntennaPattern, offset_deg) -> float | np.ndarray:
    """Linear gain at an azimuth offset from boresight (degrees).

    Symmetric in the offset; scalar in, scalar out.
    """
    x = np.abs(wrap_deg(offset_deg))
    in_lobe = x <= pattern.beamwidth_deg / 2.0
    rolloff = pattern.main_gain * np.exp(
        -GAUSSIAN_ROLLOFF * math.log(10.0) * (x / pattern.beamwidth_deg) ** 2
    )
    out = np.where(in_lobe, rolloff, pattern.side_gain)
    return float(out) if np.isscalar(offset_deg) or out.ndim == 0 else out


def psl(pattern: AntennaPattern) -> float:
    """Peak-side-lobe ratio main_gain/side_gain; inf when side lobes are dead."""
    if pattern.side_gain == 0.0:
        return math.inf
    return pattern.main_gain / pattern.side_gain


@dataclass(frozen=True)
class ChannelParams:
    """Propagation and radio constants.

    `blockage_sigma_deg` is the angular spread of the blocker shadowing
    notch; left as None it is derived from the blocker radius as
    sqrt(8) * radius. `blockage_a_db` is the attenuation of a fully
    obstructed link.
    """

    pl0_db: float = 60.1
    pl_exponent: float = 1.4
    ref_distance_m: float = 1.0
    shadow_sigma_db: float = 0.0
    nakagami_m: float = 3.0
    blockage_a_db: float = 100.0
    blockage_sigma_deg: float | None = None
    tx_power_dbm: float = 19.6
    noise_psd_dbm_hz: float = -174.0
    bandwidth_hz: float = 400e6

    def __post_init__(self):
        if self.pl_exponent <= 0.0:
            raise ValueError("pl_exponent: must be > 0")
        if self.nakagami_m < 0.5:
            raise ValueError("nakagami_m: must be >= 0.5")
        if self.blockage_a_db < 0.0:
            raise ValueError("blockage_a_db: must be >= 0")
        if self.blockage_sigma_deg is not None and self.blockage_sigma_deg <= 0.0:
            raise ValueError("blockage_sigma_deg: must be > 0")
        if self.bandwidth_hz <= 0.0:
            raise ValueError("bandwidth_hz: must be > 0")

    def resolve_blockage_sigma(self, blocker_radius_m: float) -> "ChannelParams":
        """Pin the blockage spread, deriving it from the blocker size when
        it was not set explicitly."""
        if self.blockage_sigma_deg is not None:
            return self
        import dataclasses

        return dataclasses.replace(self, blockage_sigma_deg=math.sqrt(8.0) * blocker_radius_m)

    def noise_power_dbm(self) -> float:
        return self.noise_psd_dbm_hz + 10.0 * math.log10(self.bandwidth_hz)

    def noise_power_mw(self) -> float:
        return 10.0 ** (self.noise_power_dbm() / 10.0)


@dataclass(frozen=True)
class LinkState:
    """Per-link random state: static shadow (dB) and the epoch fading power."""

    static_shadow_db: float = 0.0
    fading_power: float = 1.0

    def __post_init__(self):
        if self.fading_power <= 0.0:
            raise ValueError("fading_power: must be > 0")


def pathloss_db(params: ChannelParams, distance_m: float) -> float:
    """Distance pathloss in dB; rejects non-positive distances."""
    if distance_m <= 0.0:
        raise ValueError(f"distance_m must be > 0, got {distance_m}")
    return params.pl0_db + 10.0 * params.pl_exponent * math.log10(
        distance_m / params.ref_distance_m
    )


def blockage_db(angle_sep_deg, params: ChannelParams):
    """Shadowing notch (dB, <= 0) for a link at the given angular
    separation from the blocker; vanishes in the Gaussian tail."""
    if params.blockage_sigma_deg is None:
        raise ValueError("blockage_sigma_deg is unresolved; call resolve_blockage_sigma first")
    sep = np.asarray(angle_sep_deg, dtype=float)
    out = -params.blockage_a_db * np.exp(-(sep / params.blockage_sigma_deg) ** 2)
    return float(out) if out.ndim == 0 else out


def blockage_applies(blocker_distance_m: float, tx_distance_m: float, blocker_radius_m: float) -> bool:
    """Angular shadowing only gates links whose transmitter is at least as
    far as the blocker (within one blocker radius of slack)."""
    return blocker_distance_m <= tx_distance_m + blocker_radius_m


def fading_sample(m: float, rng: np.random.Generator) -> float:
    """Unit-mean small-scale fading power coefficient.

    Gamma(shape=m, scale=1/m), i.e. the squared envelope of Nakagami-m
    fading. m = inf is the no-fading limit and returns exactly 1.
    """
    if m < 0.5:
        raise ValueError("m must be >= 0.5")
    if math.isinf(m):
        return 1.0
    return float(rng.gamma(shape=m, scale=1.0 / m))


def received_power_dbm(
    tx_pattern: AntennaPattern,
    rx_pattern: AntennaPattern,
    geom,
    link: LinkState,
    params: ChannelParams,
    blocker_sep_deg: float | None = None,
) -> float:
    """Received power over one link in dBm.

    Composes transmit power, both antenna gains, pathloss, static shadow,
    fading and (when `blocker_sep_deg` is given) the blockage notch, all in
    the dB domain. Returns -inf when either antenna gain is exactly zero.
    """
    g_tx = antenna_gain(tx_pattern, geom.aod_deg)
    g_rx = antenna_gain(rx_pattern, geom.aoa_deg)
    if g_tx == 0.0 or g_rx == 0.0:
        return -math.inf
    power = (
        params.tx_power_dbm
        + 10.0 * math.log10(g_tx)
        + 10.0 * math.log10(g_rx)
        - pathloss_db(params, geom.distance_m)
        + link.static_shadow_db
        + 10.0 * math.log10(link.fading_power)
    )
    if blocker_sep_deg is not None:
        power += float(blockage_db(blocker_sep_deg, params))
    return power
