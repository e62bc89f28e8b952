"""Minimal self-contained SVG renderings of simulation artifacts: polar
MAE heatmaps, matrix heatmaps, deployment scatter and trajectory overlays.

Everything is plain string assembly so outputs are deterministic and
diff-able; no plotting library involved.
"""

from __future__ import annotations

import math

import numpy as np

# 3-stop colormap (dark violet -> teal -> yellow), linear in value.
_STOPS = [(68, 1, 84), (33, 145, 140), (253, 231, 37)]
_MISSING = "#d9d9d9"


def color_for(t: float) -> str:
    """Hex color for t in [0, 1] on the package colormap."""
    t = min(max(t, 0.0), 1.0)
    pos = t * (len(_STOPS) - 1)
    i = min(int(pos), len(_STOPS) - 2)
    frac = pos - i
    rgb = [round(a + (b - a) * frac) for a, b in zip(_STOPS[i], _STOPS[i + 1])]
    return "#{:02x}{:02x}{:02x}".format(*rgb)


def _svg(width: int, height: int, body: list[str], title: str) -> str:
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">\n'
        f'<rect width="{width}" height="{height}" fill="white"/>\n'
        f'<text x="{width / 2:.1f}" y="20" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{title}</text>\n'
    )
    return head + "\n".join(body) + "\n</svg>\n"


def _legend(x: float, y: float, height: float, vmin: float, vmax: float, label: str) -> str:
    stops = "".join(
        f'<stop offset="{p:.0%}" stop-color="{color_for(p)}"/>' for p in (0.0, 0.5, 1.0)
    )
    return (
        f'<defs><linearGradient id="scale" x1="0" y1="1" x2="0" y2="0">{stops}'
        f"</linearGradient></defs>\n"
        f'<rect x="{x:.1f}" y="{y:.1f}" width="14" height="{height:.1f}" '
        f'fill="url(#scale)" stroke="black" stroke-width="0.5"/>\n'
        f'<text x="{x + 20:.1f}" y="{y + height:.1f}" font-family="sans-serif" '
        f'font-size="10">{vmin:.3g}</text>\n'
        f'<text x="{x + 20:.1f}" y="{y + 8:.1f}" font-family="sans-serif" '
        f'font-size="10">{vmax:.3g}</text>\n'
        f'<text x="{x + 7:.1f}" y="{y - 8:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="10">{label}</text>\n'
    )


def _annular_path(cx, cy, r_in, r_out, a0_deg, a1_deg) -> str:
    """Closed annular-sector path (angles in screen convention, y axis down
    compensated by negating)."""
    a0, a1 = math.radians(a0_deg), math.radians(a1_deg)
    x0o, y0o = cx + r_out * math.cos(a0), cy - r_out * math.sin(a0)
    x1o, y1o = cx + r_out * math.cos(a1), cy - r_out * math.sin(a1)
    x1i, y1i = cx + r_in * math.cos(a1), cy - r_in * math.sin(a1)
    x0i, y0i = cx + r_in * math.cos(a0), cy - r_in * math.sin(a0)
    large = 1 if (a1_deg - a0_deg) % 360.0 > 180.0 else 0
    return (
        f"M {x0o:.2f} {y0o:.2f} "
        f"A {r_out:.2f} {r_out:.2f} 0 {large} 0 {x1o:.2f} {y1o:.2f} "
        f"L {x1i:.2f} {y1i:.2f} "
        f"A {r_in:.2f} {r_in:.2f} 0 {large} 1 {x0i:.2f} {y0i:.2f} Z"
    )


def polar_heatmap_svg(cells, values, title: str, legend_label: str = "MAE [deg]") -> str:
    """Polar heatmap: one filled annular sector per grid cell.

    `cells` is a list of GridCell; `values` maps (d_lo_m, psi_lo_deg) to a
    float or NaN (NaN cells render gray).
    """
    size = 560
    cx = cy = size / 2 + 10
    max_r = max(c.d_hi_m for c in cells)
    scale = (size / 2 - 40) / max_r
    finite = [v for v in values.values() if not (v is None or math.isnan(v))]
    vmin = min(finite) if finite else 0.0
    vmax = max(finite) if finite else 1.0
    span = vmax - vmin if vmax > vmin else 1.0

    body = []
    for cell in cells:
        v = values.get((cell.d_lo_m, cell.psi_lo_deg), math.nan)
        fill = _MISSING if v is None or math.isnan(v) else color_for((v - vmin) / span)
        path = _annular_path(
            cx, cy, cell.d_lo_m * scale, cell.d_hi_m * scale, cell.psi_lo_deg, cell.psi_hi_deg
        )
        body.append(f'<path d="{path}" fill="{fill}" stroke="white" stroke-width="0.4"/>')
    body.append(
        f'<circle cx="{cx:.1f}" cy="{cy:.1f}" r="2.5" fill="black"/>'
    )
    body.append(_legend(size - 8, 60, size / 2, vmin, vmax, legend_label))
    return _svg(size + 60, size + 20, body, title)


def matrix_heatmap_svg(matrix: np.ndarray, title: str, legend_label: str,
                       x_label: str = "sector", y_label: str = "epochs back") -> str:
    """Rectangular heatmap of a (rows, cols) array, row 0 on top."""
    rows, cols = matrix.shape
    cw, ch = max(4, int(480 / cols)), max(4, int(400 / rows))
    x0, y0 = 60, 40
    finite = matrix[np.isfinite(matrix)]
    vmin = float(finite.min()) if finite.size else 0.0
    vmax = float(finite.max()) if finite.size else 1.0
    span = vmax - vmin if vmax > vmin else 1.0
    body = []
    for r in range(rows):
        for c in range(cols):
            v = matrix[r, c]
            fill = _MISSING if not np.isfinite(v) else color_for((v - vmin) / span)
            body.append(
                f'<rect x="{x0 + c * cw}" y="{y0 + r * ch}" width="{cw}" height="{ch}" '
                f'fill="{fill}"/>'
            )
    body.append(
        f'<text x="{x0 + cols * cw / 2}" y="{y0 + rows * ch + 24}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="11">{x_label}</text>'
    )
    body.append(
        f'<text x="16" y="{y0 + rows * ch / 2}" font-family="sans-serif" font-size="11" '
        f'transform="rotate(-90 16 {y0 + rows * ch / 2})" text-anchor="middle">{y_label}</text>'
    )
    body.append(_legend(x0 + cols * cw + 24, y0, rows * ch * 0.8, vmin, vmax, legend_label))
    return _svg(x0 + cols * cw + 110, y0 + rows * ch + 40, body, title)


def deployment_svg(deployment, trajectory=None, title: str = "deployment") -> str:
    """Scatter of stations (squares) and users (dots) with association
    spokes; optionally the blocker path as a polyline."""
    size = 560
    cx = cy = size / 2 + 10
    pts = [deployment.bs_xy, deployment.ue_xy]
    max_r = max(float(np.abs(np.vstack(pts)).max()), 1.0)
    if trajectory:
        max_r = max(max_r, max(s.distance_m for s in trajectory if s is not None))
    scale = (size / 2 - 30) / max_r

    def to_px(x, y):
        return cx + x * scale, cy - y * scale

    body = []
    for i, (x, y) in enumerate(deployment.ue_xy):
        bx, by = deployment.bs_xy[deployment.association[i]]
        x1, y1 = to_px(x, y)
        x2, y2 = to_px(bx, by)
        body.append(
            f'<line x1="{x1:.1f}" y1="{y1:.1f}" x2="{x2:.1f}" y2="{y2:.1f}" '
            f'stroke="#bbbbbb" stroke-width="0.5"/>'
        )
    for i, (x, y) in enumerate(deployment.bs_xy):
        px, py = to_px(x, y)
        color = "#d62728" if i == deployment.typical_bs else "#1f77b4"
        body.append(
            f'<rect x="{px - 4:.1f}" y="{py - 4:.1f}" width="8" height="8" fill="{color}"/>'
        )
    for i, (x, y) in enumerate(deployment.ue_xy):
        px, py = to_px(x, y)
        color = "#2ca02c" if i == deployment.typical_ue else "#555555"
        body.append(f'<circle cx="{px:.1f}" cy="{py:.1f}" r="3" fill="{color}"/>')
    if trajectory:
        coords = []
        for s in trajectory:
            if s is None:
                continue
            x = s.distance_m * math.cos(math.radians(s.bearing_deg))
            y = s.distance_m * math.sin(math.radians(s.bearing_deg))
            px, py = to_px(x, y)
            coords.append(f"{px:.1f},{py:.1f}")
        body.append(
            f'<polyline points="{" ".join(coords)}" fill="none" stroke="#ff7f0e" '
            f'stroke-width="1.6"/>'
        )
    return _svg(size + 20, size + 20, body, title)


def trajectory_svg(truth, estimates, title: str = "blocker bearing vs time") -> str:
    """Ground-truth bearing polyline with estimated bearings as markers."""
    width, height = 640, 360
    x0, y0, plot_w, plot_h = 60, 40, width - 100, height - 90
    n = max(len(truth), 1)

    def x_px(epoch):
        return x0 + plot_w * epoch / max(n - 1, 1)

    def y_px(bearing):
        return y0 + plot_h * (180.0 - bearing) / 360.0

    body = [
        f'<rect x="{x0}" y="{y0}" width="{plot_w}" height="{plot_h}" fill="none" '
        f'stroke="black" stroke-width="0.8"/>'
    ]
    pts = " ".join(
        f"{x_px(t):.1f},{y_px(s.bearing_deg):.1f}" for t, s in enumerate(truth) if s is not None
    )
    body.append(f'<polyline points="{pts}" fill="none" stroke="#1f77b4" stroke-width="1.5"/>')
    for e in estimates:
        if e.bearing_deg is None:
            continue
        body.append(
            f'<circle cx="{x_px(e.epoch):.1f}" cy="{y_px(e.bearing_deg):.1f}" r="2.5" '
            f'fill="#d62728"/>'
        )
    body.append(
        f'<text x="{x0 + plot_w / 2}" y="{height - 14}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="11">epoch [s]</text>'
    )
    body.append(
        f'<text x="18" y="{y0 + plot_h / 2}" font-family="sans-serif" font-size="11" '
        f'transform="rotate(-90 18 {y0 + plot_h / 2})" text-anchor="middle">bearing [deg]</text>'
    )
    legend_y = y0 + 6
    body.append(
        f'<line x1="{x0 + plot_w - 150}" y1="{legend_y}" x2="{x0 + plot_w - 120}" '
        f'y2="{legend_y}" stroke="#1f77b4" stroke-width="1.5"/>'
        f'<text x="{x0 + plot_w - 114}" y="{legend_y + 4}" font-family="sans-serif" '
        f'font-size="10">truth</text>'
        f'<circle cx="{x0 + plot_w - 135}" cy="{legend_y + 16}" r="2.5" fill="#d62728"/>'
        f'<text x="{x0 + plot_w - 114}" y="{legend_y + 20}" font-family="sans-serif" '
        f'font-size="10">estimate</text>'
    )
    return _svg(width, height, body, title)
