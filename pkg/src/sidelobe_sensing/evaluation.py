"""Monte Carlo accuracy evaluation: per-cell angular error maps over the
polar grid, distance-weighted MAE and single-axis parameter sweeps."""

from __future__ import annotations

import csv
import dataclasses
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .angles import circular_diff_deg
from .config import ExperimentConfig
from .deployment import build_deployment
from .mobility import BlockerState, grid_trajectory, make_grid
from .sensing import build_sensing_matrix, make_scene, simulate_history
from .signature import analyze_window


@dataclass(frozen=True)
class ErrorSample:
    """Outcome of one dwell: ground truth vs the detector's estimate."""

    true_bearing_deg: float
    est_bearing_deg: float | None
    true_distance_m: float
    detected: bool


@dataclass
class EvalResult:
    """Aggregated grid evaluation.

    `per_cell_mae_deg` maps (d_lo_m, psi_lo_deg) to the mean circular error
    of detected dwells in that cell; `wmae_by_mu` maps each weighting
    factor to (value, 95% CI half-width). Undefined aggregates (no
    detections) are NaN, never silently zero.
    """

    per_cell_mae_deg: dict
    per_cell_n: dict
    wmae_by_mu: dict
    detection_rate: float
    trials: int
    cells: list = field(default_factory=list)
    per_trial_wmae: dict = field(default_factory=dict)


def circular_error_deg(true_deg: float, est_deg: float) -> float:
    """Wrap-aware absolute bearing error in [0, 180] degrees."""
    return float(circular_diff_deg(true_deg, est_deg))


def weight(distance_m: float, mu: float, eta: float = 1.4) -> float:
    """Distance discount exp(-mu * d^eta); mu = 0 disables weighting."""
    if distance_m < 0.0:
        raise ValueError("distance_m must be >= 0")
    return math.exp(-mu * distance_m**eta)


def wmae(samples, mu: float, eta: float = 1.4) -> float:
    """Mean of weight(d) * circular error over detected samples.

    Undetected samples are excluded; with no detections at all the value
    is undefined and NaN is returned.
    """
    weighted = [
        weight(s.true_distance_m, mu, eta) * circular_error_deg(s.true_bearing_deg, s.est_bearing_deg)
        for s in samples
        if s.detected
    ]
    if not weighted:
        return math.nan
    return float(np.mean(weighted))


def _lead_in_states(grid, dwell_epochs: int, tau: int, radius_m: float) -> list[BlockerState]:
    """Warm-up path so the very first dwell already has a full window: the
    blocker circles the innermost ring, ending just before cell 0."""
    n_angles = len({c.psi_lo_deg for c in grid})
    ring = grid[:n_angles]
    states = []
    for j in range(-tau, 0):
        cell = ring[(j // max(dwell_epochs, 1)) % n_angles]
        d, psi = cell.center
        states.append(BlockerState(distance_m=d, bearing_deg=psi, radius_m=radius_m))
    return states


def run_trial(config: ExperimentConfig, trial_seed) -> list[ErrorSample]:
    """One grid walk on a fresh deployment; returns a sample per dwell."""
    rng = np.random.default_rng(np.random.SeedSequence(trial_seed))
    channel = config.effective_channel()
    deployment = build_deployment(config.network, rng)
    scene = make_scene(
        deployment,
        channel,
        config.rx_pattern_spec(),
        config.tx_pattern_spec(),
        config.sensing.n_sectors,
        config.blocker.radius_m,
        rng,
    )
    grid = make_grid(
        config.eval.grid_max_radius_m, config.eval.grid_ring_m, config.eval.grid_cell_deg
    )
    dwell = config.eval.dwell_epochs
    tau = config.sensing.window_epochs
    walk = grid_trajectory(grid, dwell, config.blocker.radius_m)
    trajectory = _lead_in_states(grid, dwell, tau, config.blocker.radius_m) + walk
    history = simulate_history(scene, trajectory, rng)

    bands = config.band_selection()
    samples = []
    for j, state in enumerate(walk):
        matrix = build_sensing_matrix(history, t=tau + j, tau=tau)
        _, _, estimates = analyze_window(
            matrix, bands, config.detector, config.bands.prominence
        )
        newest = estimates[0]
        samples.append(
            ErrorSample(
                true_bearing_deg=state.bearing_deg,
                est_bearing_deg=newest.bearing_deg,
                true_distance_m=state.distance_m,
                detected=newest.sector is not None,
            )
        )
    return samples


def wmae_ci(per_trial_values) -> tuple[float, float]:
    """(mean, 95% half-width) over per-trial weighted MAEs, NaNs excluded."""
    arr = np.asarray(per_trial_values, dtype=float)
    valid = arr[~np.isnan(arr)]
    if valid.size == 0:
        return (math.nan, math.nan)
    half = 1.96 * float(np.std(valid, ddof=1)) / math.sqrt(valid.size) if valid.size > 1 else 0.0
    return (float(np.mean(valid)), half)


def _trial_seed(master_seed, trial: int) -> tuple:
    base = tuple(master_seed) if isinstance(master_seed, tuple) else (master_seed,)
    return base + (trial,)


def _run_trial_star(args):
    return run_trial(*args)


def run_grid_eval(
    config: ExperimentConfig,
    n_trials: int | None = None,
    seed=None,
) -> EvalResult:
    """Monte Carlo over independent deployments.

    Per trial the blocker walks the whole grid; per-cell errors and the
    per-trial weighted MAEs are aggregated with normal-approximation 95%
    confidence intervals. Each trial derives its own random stream from
    (seed, trial index), so results do not depend on scheduling.
    """
    if n_trials is None:
        n_trials = config.eval.n_trials
    if seed is None:
        seed = config.seed
    grid = make_grid(
        config.eval.grid_max_radius_m, config.eval.grid_ring_m, config.eval.grid_cell_deg
    )
    dwell = config.eval.dwell_epochs
    eta = config.weight_exponent()

    jobs = [(config, _trial_seed(seed, i)) for i in range(n_trials)]
    if config.eval.n_workers > 1:
        with ProcessPoolExecutor(max_workers=config.eval.n_workers) as pool:
            per_trial = list(pool.map(_run_trial_star, jobs))
    else:
        per_trial = [run_trial(*job) for job in jobs]

    cell_errors = {(c.d_lo_m, c.psi_lo_deg): [] for c in grid}
    n_detected = 0
    n_samples = 0
    trial_wmae = {mu: [] for mu in config.eval.mu_values}
    for samples in per_trial:
        for j, s in enumerate(samples):
            n_samples += 1
            if s.detected:
                n_detected += 1
                cell = grid[j // max(dwell, 1)]
                cell_errors[(cell.d_lo_m, cell.psi_lo_deg)].append(
                    circular_error_deg(s.true_bearing_deg, s.est_bearing_deg)
                )
        for mu in config.eval.mu_values:
            trial_wmae[mu].append(wmae(samples, mu, eta))

    per_cell_mae = {}
    per_cell_n = {}
    for key, errs in cell_errors.items():
        per_cell_n[key] = len(errs)
        per_cell_mae[key] = float(np.mean(errs)) if errs else math.nan

    wmae_by_mu = {mu: wmae_ci(values) for mu, values in trial_wmae.items()}

    return EvalResult(
        per_cell_mae_deg=per_cell_mae,
        per_cell_n=per_cell_n,
        wmae_by_mu=wmae_by_mu,
        detection_rate=n_detected / n_samples if n_samples else math.nan,
        trials=n_trials,
        cells=grid,
        per_trial_wmae=trial_wmae,
    )


SWEEP_AXES = ("psl", "beamwidth", "blocker_radius")


def apply_axis_value(config: ExperimentConfig, axis: str, value: float) -> ExperimentConfig:
    """Specialized copy of the config for one sweep point.

    psl: side-lobe gain moves, main gain stays (value is the PSL in dB).
    beamwidth: receive beamwidth, its derived gains and the sector count
    all follow the new width. blocker_radius: size and (derived) blockage
    spread follow.
    """
    if axis == "psl":
        bw, main, _ = config.rx_pattern_spec()
        side = main / 10.0 ** (value / 10.0)
        rx = dataclasses.replace(config.antenna_rx, main_gain=main, side_gain=side)
        return dataclasses.replace(config, antenna_rx=rx)
    if axis == "beamwidth":
        n_sectors = 360.0 / value
        if abs(n_sectors - round(n_sectors)) > 1e-9:
            raise ValueError(f"beamwidth {value} does not divide 360 into whole sectors")
        rx = dataclasses.replace(
            config.antenna_rx, beamwidth_deg=value, main_gain=None, side_gain=None
        )
        sensing = dataclasses.replace(config.sensing, n_sectors=int(round(n_sectors)))
        return dataclasses.replace(config, antenna_rx=rx, sensing=sensing)
    if axis == "blocker_radius":
        if value <= 0.0:
            raise ValueError("blocker_radius must be > 0")
        blocker = dataclasses.replace(config.blocker, radius_m=value)
        return dataclasses.replace(config, blocker=blocker)
    raise ValueError(f"unknown sweep axis {axis!r}; expected one of {SWEEP_AXES}")


def sweep(
    config: ExperimentConfig,
    axis: str,
    values,
    n_trials: int | None = None,
    seed=None,
) -> list[tuple[float, EvalResult]]:
    """Grid evaluation at each axis value; independent trial streams per
    point keep the whole sweep reproducible."""
    if axis not in SWEEP_AXES:
        raise ValueError(f"unknown sweep axis {axis!r}; expected one of {SWEEP_AXES}")
    if not values:
        raise ValueError("values must not be empty")
    if seed is None:
        seed = config.seed
    out = []
    for vi, value in enumerate(values):
        cfg_v = apply_axis_value(config, axis, value)
        result = run_grid_eval(cfg_v, n_trials=n_trials, seed=(seed, vi))
        out.append((value, result))
    return out


def write_cells_csv(result: EvalResult, path) -> None:
    """Dump per-cell MAE rows (ring_lo_m, psi_lo_deg, mae_deg, n_obs)."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["ring_lo_m", "psi_lo_deg", "mae_deg", "n_obs"])
        for cell in result.cells:
            key = (cell.d_lo_m, cell.psi_lo_deg)
            mae = result.per_cell_mae_deg[key]
            writer.writerow(
                [
                    f"{cell.d_lo_m:.10g}",
                    f"{cell.psi_lo_deg:.10g}",
                    "" if math.isnan(mae) else f"{mae:.10g}",
                    result.per_cell_n[key],
                ]
            )


def write_sweep_csv(rows, path) -> None:
    """Dump sweep rows (axis_value, mu, wmae_deg, ci95_deg, detection_rate)."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["axis_value", "mu", "wmae_deg", "ci95_deg", "detection_rate"])
        for value, result in rows:
            for mu, (val, ci) in sorted(result.wmae_by_mu.items()):
                writer.writerow(
                    [
                        f"{value:.10g}",
                        f"{mu:.10g}",
                        "" if math.isnan(val) else f"{val:.10g}",
                        "" if math.isnan(ci) else f"{ci:.10g}",
                        f"{result.detection_rate:.10g}",
                    ]
                )


def ring_mae_split(result: EvalResult, split_radius_m: float = 25.0) -> tuple[float, float]:
    """Mean per-cell MAE of cells inside vs outside a radius split."""
    inner, outer = [], []
    for cell in result.cells:
        mae = result.per_cell_mae_deg[(cell.d_lo_m, cell.psi_lo_deg)]
        if math.isnan(mae):
            continue
        (inner if cell.d_hi_m <= split_radius_m else outer).append(mae)
    return (
        float(np.mean(inner)) if inner else math.nan,
        float(np.mean(outer)) if outer else math.nan,
    )
