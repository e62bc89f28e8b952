"""Random network topologies: Poisson point processes on a disc, nearest
base-station association and planar link geometry."""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .angles import bearing_deg, wrap_deg

MAX_REDRAWS = 100


class DeploymentError(RuntimeError):
    """Raised when no valid deployment could be drawn."""


@dataclass(frozen=True)
class NetworkConfig:
    """Disc radius, node densities (per square meter) and a seed."""

    radius_m: float = 100.0
    bs_density: float = 6e-4
    ue_density: float = 1.5e-3
    seed: int = 0

    def __post_init__(self):
        if self.radius_m <= 0.0:
            raise ValueError("radius_m: must be > 0")
        if self.bs_density < 0.0 or self.ue_density < 0.0:
            raise ValueError("bs_density: densities must be >= 0")


@dataclass(frozen=True)
class LinkGeometry:
    """Distance plus arrival/departure azimuths relative to each boresight."""

    distance_m: float
    aoa_deg: float
    aod_deg: float


@dataclass
class Deployment:
    """One drawn topology. BS index 0 is the reference station at the origin;
    `typical_ue` is the user whose uplink it senses on."""

    bs_xy: np.ndarray  # (M, 2)
    ue_xy: np.ndarray  # (K, 2)
    association: np.ndarray  # (K,) BS index per UE
    typical_bs: int = 0
    typical_ue: int = 0

    @property
    def n_bs(self) -> int:
        return self.bs_xy.shape[0]

    @property
    def n_ue(self) -> int:
        return self.ue_xy.shape[0]


def sample_ppp(density: float, radius_m: float, rng: np.random.Generator) -> np.ndarray:
    """Draw a homogeneous PPP on a disc of the given radius.

    Returns an (N, 2) array; N ~ Poisson(density * pi * radius^2) and the
    points are uniform on the disc.
    """
    if density < 0.0:
        raise ValueError("density must be >= 0")
    if radius_m <= 0.0:
        raise ValueError("radius_m: must be > 0")
    n = rng.poisson(density * np.pi * radius_m**2)
    r = radius_m * np.sqrt(rng.uniform(size=n))
    theta = rng.uniform(0.0, 2.0 * np.pi, size=n)
    return np.column_stack((r * np.cos(theta), r * np.sin(theta)))


def associate(ue_xy: np.ndarray, bs_xy: np.ndarray) -> np.ndarray:
    """Nearest-BS map; exact distance ties go to the lowest BS index."""
    if len(bs_xy) == 0:
        raise DeploymentError("cannot associate users without base stations")
    if len(ue_xy) == 0:
        return np.zeros(0, dtype=int)
    d2 = ((ue_xy[:, None, :] - bs_xy[None, :, :]) ** 2).sum(axis=2)
    return np.argmin(d2, axis=1)


def build_deployment(cfg: NetworkConfig, rng: np.random.Generator | None = None) -> Deployment:
    """Draw a topology with the reference BS pinned at the origin.

    The reference BS is prepended to the PPP draw of stations. The typical
    user is chosen uniformly among users it serves; if it serves none, the
    whole topology is redrawn (bounded number of attempts).
    """
    if rng is None:
        rng = np.random.default_rng(cfg.seed)
    for _ in range(MAX_REDRAWS):
        bs_xy = np.vstack([np.zeros((1, 2)), sample_ppp(cfg.bs_density, cfg.radius_m, rng)])
        ue_xy = sample_ppp(cfg.ue_density, cfg.radius_m, rng)
        assoc = associate(ue_xy, bs_xy)
        served = np.flatnonzero(assoc == 0)
        if served.size:
            typical_ue = int(served[rng.integers(served.size)])
            return Deployment(bs_xy=bs_xy, ue_xy=ue_xy, association=assoc, typical_ue=typical_ue)
    raise DeploymentError(
        f"reference BS served no UE after {MAX_REDRAWS} redraws "
        f"(ue_density={cfg.ue_density})"
    )


def link_geometry(
    tx_pos,
    rx_pos,
    tx_boresight_deg: float = 0.0,
    rx_boresight_deg: float = 0.0,
) -> LinkGeometry:
    """Geometry of one directed link; angles wrapped to (-180, 180]."""
    tx = np.asarray(tx_pos, dtype=float)
    rx = np.asarray(rx_pos, dtype=float)
    delta = tx - rx
    distance = float(np.hypot(delta[0], delta[1]))
    if distance == 0.0:
        raise ValueError("tx_pos and rx_pos must not coincide")
    aoa = float(wrap_deg(bearing_deg(rx, tx) - rx_boresight_deg))
    aod = float(wrap_deg(bearing_deg(tx, rx) - tx_boresight_deg))
    return LinkGeometry(distance_m=distance, aoa_deg=aoa, aod_deg=aod)


def write_deployment_csv(deployment: Deployment, path) -> None:
    """Dump nodes as rows (kind, index, x_m, y_m, assoc_bs)."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["kind", "index", "x_m", "y_m", "assoc_bs"])
        for i, (x, y) in enumerate(deployment.bs_xy):
            writer.writerow(["bs", i, f"{x:.10g}", f"{y:.10g}", ""])
        for i, (x, y) in enumerate(deployment.ue_xy):
            writer.writerow(["ue", i, f"{x:.10g}", f"{y:.10g}", int(deployment.association[i])])
