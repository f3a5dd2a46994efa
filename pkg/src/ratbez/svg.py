"""Minimal SVG plots of curves and their approximants."""
from __future__ import annotations

import numpy as np

from ratbez.bezier import RationalBezierCurve, poly_eval, rational_eval

POLYLINE_POINTS = 512

STYLES = {
    "input": 'stroke="#c0392b" stroke-width="1.6" fill="none"',
    "dual": 'stroke="#1f4e9c" stroke-width="1.4" fill="none" stroke-dasharray="6 4"',
    "huang": 'stroke="#8b5a2b" stroke-width="1.4" fill="none" stroke-dasharray="1.5 3"',
    "lu": 'stroke="#bdb76b" stroke-width="1.4" fill="none" stroke-dasharray="8 3 2 3"',
}


def sample(curve, count=POLYLINE_POINTS):
    t = np.linspace(0.0, 1.0, count)
    if isinstance(curve, RationalBezierCurve):
        return rational_eval(curve, t)
    return poly_eval(curve, t)


def _plane(points):
    if points.shape[1] == 1:  # graph of a scalar curve over t
        return np.hstack([np.linspace(0.0, 1.0, len(points))[:, None], points])
    return points[:, :2]


def render(layers, width=600, margin=20):
    """SVG text for ``layers``: a list of ``(style_name, [curves])``.

    Only the first two coordinates are drawn (scalar curves are drawn over
    t); y points up.
    """
    polylines = [(style, _plane(sample(c))) for style, curves in layers for c in curves]
    allpts = np.vstack([p for _, p in polylines])
    lo, hi = allpts.min(axis=0), allpts.max(axis=0)
    span = np.where(hi - lo > 0, hi - lo, 1.0)
    scale = (width - 2 * margin) / span.max()
    height = int(round(span[1] * scale + 2 * margin))
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}">']
    for style, pts in polylines:
        x = margin + (pts[:, 0] - lo[0]) * scale
        y = height - margin - (pts[:, 1] - lo[1]) * scale
        coords = " ".join(f"{a:.2f},{b:.2f}" for a, b in zip(x, y))
        out.append(f'  <polyline class="{style}" {STYLES.get(style, STYLES["dual"])} points="{coords}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
