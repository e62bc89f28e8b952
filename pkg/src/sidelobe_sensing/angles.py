"""Planar angle helpers shared by geometry, radio and sensing code.

All public APIs of this package exchange angles in degrees; radians only
appear transiently inside formulas that need them.
"""

from __future__ import annotations

import numpy as np


def wrap_deg(angle_deg):
    """Wrap an angle (scalar or array) to the interval (-180, 180]."""
    return 180.0 - (180.0 - np.asarray(angle_deg, dtype=float)) % 360.0


def circular_diff_deg(a_deg, b_deg):
    """Unsigned circular separation |a - b| in [0, 180] degrees."""
    return np.abs(wrap_deg(np.asarray(a_deg, dtype=float) - b_deg))


def bearing_deg(from_xy, to_xy) -> float:
    """Absolute bearing of `to_xy` seen from `from_xy`, in (-180, 180]."""
    dx = to_xy[0] - from_xy[0]
    dy = to_xy[1] - from_xy[1]
    return float(wrap_deg(np.degrees(np.arctan2(dy, dx))))
