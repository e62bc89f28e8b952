"""Blocker trajectories: the random walk used for demos and the sequential
polar-grid sweep used for accuracy scoring.

A trajectory is a list of BlockerState, one per epoch (1 s steps by
default); `None` entries mean "no blocker present this epoch".
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, replace

import numpy as np

from .angles import wrap_deg


@dataclass(frozen=True)
class BlockerState:
    """Polar position of the blocker relative to the sensing BS."""

    distance_m: float
    bearing_deg: float
    radius_m: float = 1.0
    angular_velocity_deg_s: float = 0.0
    radial_velocity_m_s: float = 0.0
    hold_remaining_s: float = 0.0  # countdown until velocities are resampled

    def __post_init__(self):
        if self.distance_m < 0.0:
            raise ValueError("distance_m: must be >= 0")
        if self.radius_m <= 0.0:
            raise ValueError("radius_m: must be > 0")


@dataclass(frozen=True)
class GridCell:
    """One polar evaluation cell (5 m ring slice of 10 degrees)."""

    d_lo_m: float
    d_hi_m: float
    psi_lo_deg: float
    psi_hi_deg: float

    @property
    def center(self) -> tuple[float, float]:
        return (
            0.5 * (self.d_lo_m + self.d_hi_m),
            float(wrap_deg(self.psi_lo_deg + 0.5 * (self.psi_hi_deg - self.psi_lo_deg))),
        )


@dataclass(frozen=True)
class MotionBounds:
    """Distance band and velocity caps for the random walk."""

    d_min_m: float = 2.0
    d_max_m: float = 100.0
    max_angular_speed_deg_s: float = 15.0
    max_radial_speed_m_s: float = 1.0
    hold_s: float = 10.0


def step_random(
    state: BlockerState,
    dt_s: float,
    rng: np.random.Generator,
    bounds: MotionBounds,
) -> BlockerState:
    """Advance the random walk by one step.

    The bearing turns at the current angular velocity and the distance
    drifts at the radial velocity, reflecting off [d_min, d_max]. Both
    velocities are held piecewise-constant and resampled uniformly within
    their caps once per hold period.
    """
    if dt_s <= 0.0:
        raise ValueError("dt_s must be > 0")
    bearing = float(wrap_deg(state.bearing_deg + state.angular_velocity_deg_s * dt_s))
    distance = state.distance_m + state.radial_velocity_m_s * dt_s
    radial_v = state.radial_velocity_m_s
    if distance > bounds.d_max_m:
        distance = 2.0 * bounds.d_max_m - distance
        radial_v = -radial_v
    if distance < bounds.d_min_m:
        distance = 2.0 * bounds.d_min_m - distance
        radial_v = -radial_v
    distance = float(np.clip(distance, bounds.d_min_m, bounds.d_max_m))

    hold = state.hold_remaining_s - dt_s
    angular_v = state.angular_velocity_deg_s
    if hold <= 0.0:
        angular_v = float(rng.uniform(-bounds.max_angular_speed_deg_s, bounds.max_angular_speed_deg_s))
        radial_v = float(rng.uniform(-bounds.max_radial_speed_m_s, bounds.max_radial_speed_m_s))
        hold = bounds.hold_s
    return replace(
        state,
        distance_m=distance,
        bearing_deg=bearing,
        angular_velocity_deg_s=angular_v,
        radial_velocity_m_s=radial_v,
        hold_remaining_s=hold,
    )


def random_trajectory(
    n_epochs: int,
    rng: np.random.Generator,
    bounds: MotionBounds,
    radius_m: float = 1.0,
    dt_s: float = 1.0,
) -> list[BlockerState]:
    """Seed a random walk (uniform start, random initial velocities) and
    roll it for `n_epochs` epochs."""
    state = BlockerState(
        distance_m=float(rng.uniform(max(bounds.d_min_m, 5.0), 0.4 * bounds.d_max_m)),
        bearing_deg=float(rng.uniform(-180.0, 180.0)),
        radius_m=radius_m,
        angular_velocity_deg_s=float(
            rng.uniform(-bounds.max_angular_speed_deg_s, bounds.max_angular_speed_deg_s)
        ),
        radial_velocity_m_s=float(
            rng.uniform(-bounds.max_radial_speed_m_s, bounds.max_radial_speed_m_s)
        ),
        hold_remaining_s=bounds.hold_s,
    )
    out = [state]
    for _ in range(n_epochs - 1):
        state = step_random(state, dt_s, rng, bounds)
        out.append(state)
    return out


def make_grid(
    max_radius_m: float = 50.0,
    ring_width_m: float = 5.0,
    cell_angle_deg: float = 10.0,
) -> list[GridCell]:
    """Polar mesh of equal cells covering the disc up to `max_radius_m`,
    ring-major starting at the innermost ring and psi = 0."""
    n_rings = int(round(max_radius_m / ring_width_m))
    n_angles = int(round(360.0 / cell_angle_deg))
    cells = []
    for ring in range(n_rings):
        for j in range(n_angles):
            cells.append(
                GridCell(
                    d_lo_m=ring * ring_width_m,
                    d_hi_m=(ring + 1) * ring_width_m,
                    psi_lo_deg=j * cell_angle_deg,
                    psi_hi_deg=(j + 1) * cell_angle_deg,
                )
            )
    return cells


def grid_trajectory(
    grid: list[GridCell],
    dwell_epochs: int,
    radius_m: float = 1.0,
) -> list[BlockerState]:
    """Visit every cell center sequentially for `dwell_epochs` epochs each."""
    if not grid:
        raise ValueError("grid must not be empty")
    out = []
    for cell in grid:
        d, psi = cell.center
        for _ in range(dwell_epochs):
            out.append(BlockerState(distance_m=d, bearing_deg=psi, radius_m=radius_m))
    return out


def angle_to_link(state: BlockerState, link_boresight_deg: float) -> float:
    """Blocker bearing relative to the link boresight, in (-180, 180]."""
    return float(wrap_deg(state.bearing_deg - link_boresight_deg))


def write_trajectory_csv(trajectory, path) -> None:
    """Dump (epoch, d_m, bearing_deg); absent epochs get empty fields."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["epoch", "d_m", "bearing_deg"])
        for t, state in enumerate(trajectory):
            if state is None:
                writer.writerow([t, "", ""])
            else:
                writer.writerow([t, f"{state.distance_m:.10g}", f"{state.bearing_deg:.10g}"])
