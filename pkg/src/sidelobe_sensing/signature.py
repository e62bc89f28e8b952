"""Blind separation of the sensing matrix into a static trend, a moving
blocker signature and residual noise, via SVD band selection, plus the
conversion of the signature into per-epoch angular estimates."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .sensing import SectorPartition, SensingMatrix

# Singular values below RANK_TOL * sigma_1 * max(shape) count as zero.
RANK_TOL = np.finfo(float).eps


@dataclass
class SvdFactors:
    """Thin SVD of a matrix, zero singular values trimmed."""

    left_vectors: np.ndarray  # (m, r)
    singular_values: np.ndarray  # (r,) non-increasing, > 0
    right_vectors: np.ndarray  # (n, r)

    @property
    def rank(self) -> int:
        return self.singular_values.size

    def reconstruct(self) -> np.ndarray:
        return (self.left_vectors * self.singular_values) @ self.right_vectors.T


@dataclass
class BandSplit:
    """Three-way partial-sum split of an SVD: components 1..l0 form the
    trend, l0+1..l1 the signature, l1+1..r the noise floor."""

    l0: int
    l1: int
    trend: np.ndarray
    signature: np.ndarray
    noise: np.ndarray


@dataclass(frozen=True)
class AngularEstimate:
    """Detection outcome for one epoch: the strongest-signature sector (and
    its orientation) when the strength clears the threshold, else nothing."""

    epoch: int
    sector: int | None
    bearing_deg: float | None
    strength: float


@dataclass(frozen=True)
class DetectorConfig:
    """Robust activity threshold: detect when a row's peak signature
    strength exceeds median + threshold_c * MAD, both taken over the
    magnitudes of the whole signature band. `min_rel_strength` is a
    numerical-dust floor relative to the peak."""

    threshold_c: float = 22.0
    min_rel_strength: float = 1e-9


def svd(matrix: np.ndarray | SensingMatrix) -> SvdFactors:
    """Thin SVD with near-zero singular values trimmed off."""
    values = matrix.values_db if isinstance(matrix, SensingMatrix) else np.asarray(matrix, float)
    if not np.all(np.isfinite(values)):
        raise ValueError("matrix entries must be finite")
    u, s, vt = np.linalg.svd(values, full_matrices=False)
    if s.size and s[0] > 0.0:
        r = int(np.sum(s > s[0] * max(values.shape) * RANK_TOL))
    else:
        r = 0
    return SvdFactors(left_vectors=u[:, :r], singular_values=s[:r], right_vectors=vt[:r].T)


def _band(factors: SvdFactors, lo: int, hi: int) -> np.ndarray:
    """Partial sum of components lo+1..hi (0-based slice [lo:hi])."""
    shape = (factors.left_vectors.shape[0], factors.right_vectors.shape[0])
    if hi <= lo:
        return np.zeros(shape)
    u = factors.left_vectors[:, lo:hi]
    s = factors.singular_values[lo:hi]
    v = factors.right_vectors[:, lo:hi]
    return (u * s) @ v.T


def split_bands(factors: SvdFactors, l0: int, l1: int) -> BandSplit:
    """Split into trend (1..l0), signature (l0+1..l1) and noise (l1+1..r)."""
    if not 1 <= l0 <= l1 <= factors.rank:
        raise ValueError(f"need 1 <= l0 <= l1 <= rank={factors.rank}, got ({l0}, {l1})")
    return BandSplit(
        l0=l0,
        l1=l1,
        trend=_band(factors, 0, l0),
        signature=_band(factors, l0, l1),
        noise=_band(factors, l1, factors.rank),
    )


def suggest_bands(singular_values, prominence: float = 0.5) -> tuple[int, int]:
    """Pick (l0, l1) from breaks in the relative singular-value curve.

    Computes sigma_l/sigma_1, its discrete slopes, and the slope changes
    between consecutive segments; the two largest-magnitude changes mark
    the band edges (smaller index -> l0). When no change reaches
    `prominence` the split defaults to (1, ceil(r/2)).
    """
    s = np.asarray(singular_values, dtype=float)
    if s.size < 3:
        raise ValueError("need at least 3 singular values")
    rel = s / s[0]
    slope_change = np.abs(np.diff(rel, n=2))  # index i -> break after component i+1
    fallback = (1, math.ceil(s.size / 2))
    if slope_change.size < 2 or slope_change.max() < prominence:
        return fallback
    top = np.sort(np.argsort(slope_change, kind="stable")[-2:] + 1)
    return int(top[0]), int(top[1])


def estimate_angles(
    split: BandSplit,
    partition: SectorPartition,
    detector: DetectorConfig = DetectorConfig(),
    epoch_of_row=None,
) -> list[AngularEstimate]:
    """Per-epoch blocker bearing estimates from the signature band.

    Sector activity is an upward SINR excursion (blocked interference), so
    each row's candidate is its strongest positive signature entry; the
    matching downward excursions (own-link blockage, fades) never win. A
    candidate counts as a detection only above the robust threshold, and
    the reported bearing is the orientation of the winning sector.
    """
    strengths = np.clip(split.signature, 0.0, None)
    magnitudes = np.abs(split.signature)
    med = float(np.median(magnitudes))
    mad = float(np.median(np.abs(magnitudes - med)))
    threshold = med + detector.threshold_c * mad
    floor = detector.min_rel_strength * float(magnitudes.max(initial=0.0))
    orientations = partition.orientations_deg()
    if epoch_of_row is None:
        epoch_of_row = -np.arange(strengths.shape[0])

    out = []
    for r in range(strengths.shape[0]):
        k = int(np.argmax(strengths[r]))
        peak = float(strengths[r, k])
        if peak > threshold and peak > floor:
            est = AngularEstimate(
                epoch=int(epoch_of_row[r]),
                sector=k,
                bearing_deg=float(orientations[k]),
                strength=peak,
            )
        else:
            est = AngularEstimate(epoch=int(epoch_of_row[r]), sector=None, bearing_deg=None, strength=peak)
        out.append(est)
    return out


def analyze_window(
    matrix: SensingMatrix,
    bands: tuple[int, int] | str = (1, 17),
    detector: DetectorConfig = DetectorConfig(),
    prominence: float = 0.5,
) -> tuple[SvdFactors, BandSplit, list[AngularEstimate]]:
    """Full pipeline for one window: SVD, band split, angular estimates.

    `bands` is either an explicit (l0, l1) pair or "auto" to derive it from
    the singular-value curve; indices are clamped to the actual rank since
    components past it are identically zero.
    """
    factors = svd(matrix)
    if factors.rank == 0:
        raise ValueError("sensing matrix is identically zero")
    if bands == "auto":
        l0, l1 = suggest_bands(factors.singular_values, prominence=prominence)
    else:
        l0, l1 = bands
    l0 = min(max(1, l0), factors.rank)
    l1 = min(max(l0, l1), factors.rank)
    split = split_bands(factors, l0, l1)
    estimates = estimate_angles(split, matrix.partition, detector, matrix.epoch_of_row)
    return factors, split, estimates


def write_signature_csv(split: BandSplit, estimates, matrix: SensingMatrix, path) -> None:
    """Dump (epoch, sector, strength, detected) for every matrix pixel."""
    strengths = np.abs(split.signature)
    detected_sector = {e.epoch: e.sector for e in estimates if e.sector is not None}
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["epoch", "sector", "strength", "detected"])
        for r, epoch in enumerate(matrix.epoch_of_row):
            for k in range(strengths.shape[1]):
                flag = 1 if detected_sector.get(int(epoch)) == k else 0
                writer.writerow([int(epoch), k, f"{strengths[r, k]:.10g}", flag])


def write_estimates_csv(estimates, path) -> None:
    """Dump (epoch, bearing_deg); undetected epochs leave the bearing empty."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["epoch", "bearing_deg"])
        for e in sorted(estimates, key=lambda e: e.epoch):
            writer.writerow([e.epoch, "" if e.bearing_deg is None else f"{e.bearing_deg:.10g}"])
