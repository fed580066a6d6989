"""Self-contained SVG rendering of cadlag step-function paths.

No plotting dependency: paths become piecewise-constant polylines inside a
minimal hand-written SVG with axes and tick labels.  Optionally the value
axis is logarithmic (useful for the increasing family, whose states spread
over many dyadic levels).
"""

from __future__ import annotations

import math

_COLORS = ("#000000", "#cc0000", "#009900", "#0044cc", "#bb8800")

_WIDTH, _HEIGHT = 720, 480
_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 64, 16, 20, 44


def _ticks(lo: float, hi: float, n: int = 6):
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / n
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 2.5, 5.0, 10.0):
        if raw <= mult * mag:
            step = mult * mag
            break
    first = math.ceil(lo / step) * step
    ticks = []
    v = first
    while v <= hi + 1e-12 * step:
        ticks.append(0.0 if abs(v) < 1e-12 * step else v)
        v += step
    return ticks


def paths_svg(labeled_paths, horizon: float, title: str = "",
              log_y: bool = False) -> str:
    """Render [(label, times, values), ...] as an SVG document string.

    ``times``/``values`` describe a step function: values[0] on [0, times[0]),
    values[i+1] from times[i] on.  With ``log_y`` nonpositive values are
    clipped to the smallest positive value drawn.
    """
    series = []
    vmin, vmax = math.inf, -math.inf
    for label, times, values in labeled_paths:
        values = [float(v) for v in values]
        times = [float(t) for t in times]
        series.append((label, times, values))
        for v in values:
            if not log_y or v > 0.0:
                vmin, vmax = min(vmin, v), max(vmax, v)
    if not series:
        raise ValueError("no paths to draw")
    if vmin is math.inf:
        vmin, vmax = 0.0, 1.0
    if log_y:
        vmin = max(vmin, 1e-300)
        ylo, yhi = math.log10(vmin), math.log10(max(vmax, vmin * 10.0))
    else:
        pad = 0.05 * (vmax - vmin or 1.0)
        ylo, yhi = vmin - pad, vmax + pad

    plot_w = _WIDTH - _MARGIN_L - _MARGIN_R
    plot_h = _HEIGHT - _MARGIN_T - _MARGIN_B

    def sx(t):
        return _MARGIN_L + plot_w * t / horizon

    def sy(v):
        if log_y:
            v = math.log10(max(v, vmin))
        return _MARGIN_T + plot_h * (yhi - v) / (yhi - ylo)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" '
        f'height="{_HEIGHT}" viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<rect x="{_MARGIN_L}" y="{_MARGIN_T}" width="{plot_w}" '
        f'height="{plot_h}" fill="none" stroke="#666"/>',
    ]
    if title:
        out.append(
            f'<text x="{_WIDTH / 2:.1f}" y="14" text-anchor="middle" '
            f'font-family="sans-serif" font-size="12">{title}</text>'
        )
    for t in _ticks(0.0, horizon):
        x = sx(t)
        out.append(
            f'<line x1="{x:.2f}" y1="{_MARGIN_T + plot_h}" x2="{x:.2f}" '
            f'y2="{_MARGIN_T + plot_h + 5}" stroke="#666"/>'
        )
        out.append(
            f'<text x="{x:.2f}" y="{_MARGIN_T + plot_h + 18}" '
            f'text-anchor="middle" font-family="sans-serif" font-size="10">'
            f"{t:g}</text>"
        )
    yticks = (
        [10.0**e for e in _ticks(ylo, yhi)] if log_y else _ticks(ylo, yhi)
    )
    for v in yticks:
        y = sy(v)
        out.append(
            f'<line x1="{_MARGIN_L - 5}" y1="{y:.2f}" x2="{_MARGIN_L}" '
            f'y2="{y:.2f}" stroke="#666"/>'
        )
        out.append(
            f'<text x="{_MARGIN_L - 8}" y="{y + 3:.2f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="10">{v:.3g}</text>'
        )
    for i, (label, times, values) in enumerate(series):
        color = _COLORS[i % len(_COLORS)]
        pts = [f"{sx(0.0):.2f},{sy(values[0]):.2f}"]
        for j, t in enumerate(times):
            if t > horizon:
                break
            pts.append(f"{sx(t):.2f},{sy(values[j]):.2f}")  # horizontal to jump
            pts.append(f"{sx(t):.2f},{sy(values[j + 1]):.2f}")  # vertical step
        pts.append(f"{sx(horizon):.2f},{pts[-1].split(',')[1]}")
        out.append(
            f'<polyline points="{" ".join(pts)}" fill="none" '
            f'stroke="{color}" stroke-width="1.2"/>'
        )
        out.append(
            f'<text x="{_MARGIN_L + 10}" y="{_MARGIN_T + 16 + 14 * i}" '
            f'font-family="sans-serif" font-size="11" fill="{color}">{label}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
