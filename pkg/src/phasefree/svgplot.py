"""Dependency-free SVG line chart used by the sweep CLI."""

from __future__ import annotations

from typing import Sequence

_WIDTH = 800
_HEIGHT = 600
_MARGIN_LEFT = 90
_MARGIN_RIGHT = 30
_MARGIN_TOP = 40
_MARGIN_BOTTOM = 70

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf")

_TICKS = 5


def _format(value: float) -> str:
    return f"{value:.6g}"


def render_line_chart(
    series: Sequence[tuple[str, Sequence[float], Sequence[float]]],
    title: str,
    x_label: str,
    y_label: str,
) -> str:
    """Render (label, xs, ys) series as an 800x600 SVG with linear axes and
    a legend; emits exactly one polyline element per series."""
    if not series:
        raise ValueError("render_line_chart requires at least one series")
    xs_all = [x for _, xs, _ in series for x in xs]
    ys_all = [y for _, _, ys in series for y in ys]
    if not xs_all:
        raise ValueError("render_line_chart requires non-empty series")
    x_min, x_max = min(xs_all), max(xs_all)
    y_min, y_max = min(ys_all), max(ys_all)
    if x_max == x_min:
        x_max = x_min + 1.0
    if y_max == y_min:
        y_max = y_min + 1.0

    plot_w = _WIDTH - _MARGIN_LEFT - _MARGIN_RIGHT
    plot_h = _HEIGHT - _MARGIN_TOP - _MARGIN_BOTTOM

    def px(x: float) -> float:
        return _MARGIN_LEFT + (x - x_min) / (x_max - x_min) * plot_w

    def py(y: float) -> float:
        return _MARGIN_TOP + plot_h - (y - y_min) / (y_max - y_min) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect x="0" y="0" width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<text x="{_WIDTH / 2:.1f}" y="24" text-anchor="middle" font-size="16">{title}</text>',
    ]

    axis_y = _MARGIN_TOP + plot_h
    parts.append(
        f'<line x1="{_MARGIN_LEFT}" y1="{axis_y}" x2="{_MARGIN_LEFT + plot_w}" y2="{axis_y}" stroke="black"/>'
    )
    parts.append(
        f'<line x1="{_MARGIN_LEFT}" y1="{_MARGIN_TOP}" x2="{_MARGIN_LEFT}" y2="{axis_y}" stroke="black"/>'
    )
    for i in range(_TICKS + 1):
        frac = i / _TICKS
        x_val = x_min + frac * (x_max - x_min)
        y_val = y_min + frac * (y_max - y_min)
        x_pix = px(x_val)
        y_pix = py(y_val)
        parts.append(f'<line x1="{x_pix:.1f}" y1="{axis_y}" x2="{x_pix:.1f}" y2="{axis_y + 6}" stroke="black"/>')
        parts.append(
            f'<text x="{x_pix:.1f}" y="{axis_y + 22}" text-anchor="middle" font-size="12">{_format(x_val)}</text>'
        )
        parts.append(f'<line x1="{_MARGIN_LEFT - 6}" y1="{y_pix:.1f}" x2="{_MARGIN_LEFT}" y2="{y_pix:.1f}" stroke="black"/>')
        parts.append(
            f'<text x="{_MARGIN_LEFT - 10}" y="{y_pix + 4:.1f}" text-anchor="end" font-size="12">{_format(y_val)}</text>'
        )
    parts.append(
        f'<text x="{_MARGIN_LEFT + plot_w / 2:.1f}" y="{_HEIGHT - 16}" text-anchor="middle" font-size="14">{x_label}</text>'
    )
    parts.append(
        f'<text x="22" y="{_MARGIN_TOP + plot_h / 2:.1f}" text-anchor="middle" font-size="14" '
        f'transform="rotate(-90 22 {_MARGIN_TOP + plot_h / 2:.1f})">{y_label}</text>'
    )

    for idx, (label, xs, ys) in enumerate(series):
        color = _PALETTE[idx % len(_PALETTE)]
        points = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys))
        parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{points}"/>')
        legend_y = _MARGIN_TOP + 14 + 18 * idx
        legend_x = _MARGIN_LEFT + plot_w - 140
        parts.append(
            f'<line x1="{legend_x}" y1="{legend_y - 4}" x2="{legend_x + 24}" y2="{legend_y - 4}" '
            f'stroke="{color}" stroke-width="1.5"/>'
        )
        parts.append(f'<text x="{legend_x + 30}" y="{legend_y}" font-size="12">{label}</text>')

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
